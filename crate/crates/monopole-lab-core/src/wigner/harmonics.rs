//! Helicity spinors and monopole spinor harmonics.
//!
//! The two-component helicity spinors are the eigenvectors of σ·n̂(θ,φ)
//! with eigenvalues ±1, in the phase convention
//!
//! ```text
//!     χ_{+1/2} = (  cos(θ/2) e^{−iφ/2},  sin(θ/2) e^{+iφ/2} )ᵀ
//!     χ_{−1/2} = ( −sin(θ/2) e^{−iφ/2},  cos(θ/2) e^{+iφ/2} )ᵀ .
//! ```
//!
//! On a monopole background of charge k the angular spinor blocks are the
//! combinations
//!
//! ```text
//!     ξ^{(1,2)}_{jmk}(θ,φ) = χ_{−1/2} D_{k+1/2} ± χ_{+1/2} D_{k−1/2},
//! ```
//!
//! with D_σ = D^j_{−m,σ}(φ,θ,0); these generalize the ordinary spherical
//! spinors, which are recovered at k = 0 up to the fixed normalization
//!
//! ```text
//!     Ω^{j±1/2}_{jm} = (−1)^{m+1/2} √((2j+1)/8π) (χ_{−1/2}D_{+1/2} ± χ_{+1/2}D_{−1/2}).
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::wigner::{check_index_pair, d_basis, HalfInt};

/// Helicity eigenspinor χ_{±1/2}(θ,φ); `sign` = +1 or −1 selects the
/// σ·n̂ eigenvalue.
pub fn helicity_spinor(sign: i32, theta: f64, phi: f64) -> Result<[Complex64; 2]> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let em = Complex64::from_polar(1.0, -phi / 2.0);
    let ep = Complex64::from_polar(1.0, phi / 2.0);
    match sign {
        1 => Ok([em * c, ep * s]),
        -1 => Ok([em * (-s), ep * c]),
        _ => Err(Error::Parameter(format!(
            "helicity sign must be +1 or -1, got {sign}"
        ))),
    }
}

/// The pair (ξ^{(1)}, ξ^{(2)}) of monopole spinor harmonics at (θ, φ).
/// Both spinor weights k ± ½ must exist for this j.
pub fn monopole_harmonics(
    j: HalfInt,
    m: HalfInt,
    k: HalfInt,
    theta: f64,
    phi: f64,
) -> Result<([Complex64; 2], [Complex64; 2])> {
    check_index_pair(j, m)?;
    check_index_pair(j, k + HalfInt::HALF)?;
    check_index_pair(j, k - HalfInt::HALF)?;

    let chi_p = helicity_spinor(1, theta, phi)?;
    let chi_m = helicity_spinor(-1, theta, phi)?;
    let d_hi = d_basis(j, m, k + HalfInt::HALF, phi, theta)?;
    let d_lo = d_basis(j, m, k - HalfInt::HALF, phi, theta)?;

    let xi1 = [chi_m[0] * d_hi + chi_p[0] * d_lo, chi_m[1] * d_hi + chi_p[1] * d_lo];
    let xi2 = [chi_m[0] * d_hi - chi_p[0] * d_lo, chi_m[1] * d_hi - chi_p[1] * d_lo];
    Ok((xi1, xi2))
}

/// Normalized spherical spinor Ω^{j±1/2}_{jm}(θ,φ) for orbital momentum
/// l = j ± ½ (select with `l_sign`); defined for half-odd j ≥ 1/2.
pub fn spherical_spinor(
    j: HalfInt,
    m: HalfInt,
    l_sign: i32,
    theta: f64,
    phi: f64,
) -> Result<[Complex64; 2]> {
    if j.is_integer() {
        return Err(Error::Index(format!(
            "spherical spinors need half-odd j, got j = {j}"
        )));
    }
    check_index_pair(j, m)?;
    let norm = ((j.doubled() as f64 + 1.0) / (8.0 * std::f64::consts::PI)).sqrt()
        * (m + HalfInt::HALF).parity_sign();
    let chi_p = helicity_spinor(1, theta, phi)?;
    let chi_m = helicity_spinor(-1, theta, phi)?;
    let d_hi = d_basis(j, m, HalfInt::HALF, phi, theta)?;
    let d_lo = d_basis(j, m, -HalfInt::HALF, phi, theta)?;
    let s = match l_sign {
        1 => 1.0,
        -1 => -1.0,
        _ => {
            return Err(Error::Parameter(format!(
                "orbital selector must be +1 (l = j+1/2) or -1 (l = j-1/2), got {l_sign}"
            )))
        }
    };
    Ok([
        norm * (chi_m[0] * d_hi + s * chi_p[0] * d_lo),
        norm * (chi_m[1] * d_hi + s * chi_p[1] * d_lo),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::d_basis;

    fn h(d: i32) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    fn sigma_dot_n(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
        let (st, ct) = (theta.sin(), theta.cos());
        [
            [
                Complex64::new(ct, 0.0),
                Complex64::from_polar(st, -phi),
            ],
            [Complex64::from_polar(st, phi), Complex64::new(-ct, 0.0)],
        ]
    }

    #[test]
    fn helicity_spinors_are_eigenvectors() {
        for &(theta, phi) in &[(0.21, 0.9), (1.4, 2.2), (2.9, 5.5)] {
            let mat = sigma_dot_n(theta, phi);
            for sign in [1, -1] {
                let chi = helicity_spinor(sign, theta, phi).unwrap();
                for r in 0..2 {
                    let applied = mat[r][0] * chi[0] + mat[r][1] * chi[1];
                    let want = chi[r] * sign as f64;
                    assert!((applied - want).norm() < 1e-14, "sign={sign} row={r}");
                }
            }
        }
    }

    #[test]
    fn parallelogram_norm_identity() {
        // ‖ξ¹‖² + ‖ξ²‖² = 2(|D_{k+1/2}|² + |D_{k−1/2}|²)  (helicity spinors are unit).
        for (j2, m2, k2) in [(3, 1, 0), (5, -3, 2), (4, 2, -1)] {
            let (theta, phi) = (1.1, 0.7);
            let (xi1, xi2) = monopole_harmonics(h(j2), h(m2), h(k2), theta, phi).unwrap();
            let lhs: f64 = xi1.iter().chain(xi2.iter()).map(|z| z.norm_sqr()).sum();
            let d_hi = d_basis(h(j2), h(m2), h(k2 + 1), phi, theta).unwrap();
            let d_lo = d_basis(h(j2), h(m2), h(k2 - 1), phi, theta).unwrap();
            let rhs = 2.0 * (d_hi.norm_sqr() + d_lo.norm_sqr());
            assert!((lhs - rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_charge_reduces_to_spherical_spinors() {
        // At k = 0, ξ^{(1,2)} ∝ Ω^{j±1/2}_{jm} with the constant
        // (−1)^{m+1/2}√((2j+1)/8π) — check the proportionality pointwise.
        for (j2, m2) in [(1, 1), (3, -1), (5, 3)] {
            for &(theta, phi) in &[(0.8, 0.4), (2.0, 3.9)] {
                let (xi1, xi2) = monopole_harmonics(h(j2), h(m2), HalfInt::ZERO, theta, phi).unwrap();
                let om_p = spherical_spinor(h(j2), h(m2), 1, theta, phi).unwrap();
                let om_m = spherical_spinor(h(j2), h(m2), -1, theta, phi).unwrap();
                let c = ((j2 as f64 + 1.0) / (8.0 * std::f64::consts::PI)).sqrt()
                    * (h(m2) + HalfInt::HALF).parity_sign();
                for i in 0..2 {
                    assert!((om_p[i] - xi1[i] * c).norm() < 1e-14);
                    assert!((om_m[i] - xi2[i] * c).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn invalid_weights_rejected() {
        // j = 1/2, k = 1: weights 1/2 and 3/2; the latter exceeds j.
        assert!(monopole_harmonics(h(1), h(1), h(2), 1.0, 0.0).is_err());
        // Lattice mismatch: j = 3/2 with k = 1/2 (integer weights).
        assert!(monopole_harmonics(h(3), h(1), h(1), 1.0, 0.0).is_err());
        assert!(spherical_spinor(h(2), h(0), 1, 1.0, 0.0).is_err());
    }
}
