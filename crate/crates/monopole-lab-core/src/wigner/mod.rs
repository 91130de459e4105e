//! Wigner rotation functions d^j_{m′m}(θ), D^j_{m′m}(φ,θ,0), their
//! recursion identities, the polynomial admissibility criterion for
//! charge–spin weights, and monopole spinor harmonics.
//!
//! # Convention
//!
//! The d-function is the matrix element of a rotation about the y-axis in
//! the standard angular-momentum basis,
//!
//! ```text
//!     d^j(θ) = exp(θ A),        A = −i J_y,
//!     A_{m+1,m} = −½ √((j−m)(j+m+1)),
//!     A_{m−1,m} = +½ √((j+m)(j−m+1)),
//! ```
//!
//! so that
//!
//! ```text
//!     d^{1/2} = |  cos θ/2   −sin θ/2 |      (rows/columns m′, m = +½, −½)
//!               |  sin θ/2    cos θ/2 |
//! ```
//!
//! and the full rotation function with third angle zero is
//! D^j_{m′m}(φ,θ,0) = e^{−i m′ φ} d^j_{m′m}(θ).  The angular basis used
//! by the separated wave functions is D^j_{−m,σ}(φ,θ,0) = e^{imφ}
//! d^j_{−m,σ}(θ), with σ the spin weight along the radial direction.
//!
//! # Evaluation strategy
//!
//! Small j (2j ≤ 5) use the explicit factorial sum
//!
//! ```text
//!   d^j_{m′m} = √((j+m′)!(j−m′)!(j+m)!(j−m)!) ·
//!       Σ_s (−1)^{m′−m+s} cos^{2j+m−m′−2s}(θ/2) sin^{m′−m+2s}(θ/2)
//!             / [ (j+m−s)! s! (m′−m+s)! (j−m′−s)! ],
//! ```
//!
//! which is exact arithmetic on tiny factorials.  Larger j are reached by
//! the three-term recurrence in j at fixed (m′, m),
//!
//! ```text
//!   j √((j+1)²−m′²) √((j+1)²−m²) d^{j+1}
//!     = (2j+1) [ j(j+1) cos θ − m′m ] d^j
//!       − (j+1) √(j²−m′²) √(j²−m²) d^{j−1},
//! ```
//!
//! seeded at j₀ = max(|m′|, |m|) where the d^{j₀−1} coefficient vanishes
//! and d^{j₀} has a closed product form (a boundary row or column of the
//! matrix).  Upward recurrence in j is the numerically stable direction
//! here: the d-functions are bounded by 1 and the recurrence is dominated
//! by its inhomogeneous middle term.

mod halfint;
pub mod harmonics;
pub mod pauli;
pub mod recursion;
pub mod reference;

pub use halfint::HalfInt;
pub use pauli::{pauli_allowed, pauli_allowed_real, pauli_derivative_check, PauliVerdict};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated index triple (j, m, σ) with |m| ≤ j, |σ| ≤ j and both
/// differences j−m, j−σ integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WignerIndex {
    pub j: HalfInt,
    pub m: HalfInt,
    pub sigma: HalfInt,
}

impl WignerIndex {
    pub fn new(j: HalfInt, m: HalfInt, sigma: HalfInt) -> Result<Self> {
        check_index_pair(j, m)?;
        check_index_pair(j, sigma)?;
        Ok(WignerIndex { j, m, sigma })
    }
}

/// Validates a single (j, m) pair: j ≥ 0, |m| ≤ j, j−m ∈ ℤ.
pub(crate) fn check_index_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.is_negative() {
        return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
    }
    if m.abs() > j {
        return Err(Error::Index(format!("|m| must not exceed j, got j = {j}, m = {m}")));
    }
    if !(j - m).is_integer() {
        return Err(Error::Index(format!(
            "j − m must be an integer, got j = {j}, m = {m}"
        )));
    }
    Ok(())
}

/// True when (j, m) is a valid projection pair; cheap non-erroring form.
pub(crate) fn index_pair_valid(j: HalfInt, m: HalfInt) -> bool {
    !j.is_negative() && m.abs() <= j && (j - m).is_integer()
}

/// Exact binomial coefficient C(n, k) as f64 (n small enough that the
/// u128 product is exact; for the index ranges here n ≤ a few tens).
fn binomial(n: u32, k: u32) -> f64 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k as u128 {
        num *= n as u128 - i;
        den *= i + 1;
        // Keep the fraction reduced so u128 never overflows for n ≤ 128.
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num as f64 / den as f64
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// n! as f64, exact for n ≤ 22 (all uses here have n ≤ 2j with small j).
fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|i| i as f64).product()
}

/// Direct factorial-sum evaluation; valid for any indices but used only
/// for small 2j where every factorial is tiny and exact.
fn d_by_sum(j2: i32, r2: i32, c2: i32, theta: f64) -> f64 {
    // Integer combinations (all guaranteed integral by index validation):
    let jp_r = (j2 + r2) / 2; // j + m′
    let jm_r = (j2 - r2) / 2; // j − m′
    let jp_c = (j2 + c2) / 2; // j + m
    let jm_c = (j2 - c2) / 2; // j − m
    let dm = (r2 - c2) / 2; // m′ − m

    let pre = (factorial(jp_r as u32)
        * factorial(jm_r as u32)
        * factorial(jp_c as u32)
        * factorial(jm_c as u32))
    .sqrt();

    let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let s_min = 0.max(-dm);
    let s_max = jp_c.min(jm_r);
    let mut sum = 0.0;
    for s in s_min..=s_max {
        let sign = if (dm + s).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let denom = factorial((jp_c - s) as u32)
            * factorial(s as u32)
            * factorial((dm + s) as u32)
            * factorial((jm_r - s) as u32);
        let cos_pow = jp_c + jm_r - 2 * s; // 2j + m − m′ − 2s
        let sin_pow = dm + 2 * s; // m′ − m + 2s
        sum += sign * ch.powi(cos_pow) * sh.powi(sin_pow) / denom;
    }
    pre * sum
}

/// Closed forms for the boundary rows/columns m′ = ±j or m = ±j, giving
/// the recurrence seed at j₀ = max(|m′|, |m|):
///
/// ```text
///   d^j_{ j,m}  = √C(2j, j+m)  cos^{j+m}(θ/2) (−sin θ/2)^{j−m}
///   d^j_{−j,m}  = √C(2j, j+m)  cos^{j−m}(θ/2)   sin^{j+m}(θ/2)
///   d^j_{m′, j} = √C(2j, j+m′) cos^{j+m′}(θ/2)  sin^{j−m′}(θ/2)
///   d^j_{m′,−j} = (−1)^{j+m′} √C(2j, j+m′) cos^{j−m′}(θ/2) sin^{j+m′}(θ/2)
/// ```
fn d_boundary(j2: i32, r2: i32, c2: i32, theta: f64) -> f64 {
    let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    if r2 == j2 {
        let p = (j2 + c2) / 2;
        let q = (j2 - c2) / 2;
        let sign = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * binomial(j2 as u32, p as u32).sqrt() * ch.powi(p) * sh.powi(q)
    } else if r2 == -j2 {
        let p = (j2 + c2) / 2;
        let q = (j2 - c2) / 2;
        binomial(j2 as u32, p as u32).sqrt() * ch.powi(q) * sh.powi(p)
    } else if c2 == j2 {
        let p = (j2 + r2) / 2;
        let q = (j2 - r2) / 2;
        binomial(j2 as u32, p as u32).sqrt() * ch.powi(p) * sh.powi(q)
    } else {
        // c2 == −j2
        let p = (j2 + r2) / 2;
        let q = (j2 - r2) / 2;
        let sign = if p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * binomial(j2 as u32, p as u32).sqrt() * ch.powi(q) * sh.powi(p)
    }
}

/// Upward three-term recurrence in j at fixed (m′, m); see module docs.
fn d_by_recurrence(j2: i32, r2: i32, c2: i32, theta: f64) -> f64 {
    let j0_2 = r2.abs().max(c2.abs());
    let mp = r2 as f64 / 2.0;
    let m = c2 as f64 / 2.0;
    let ct = theta.cos();

    // Seeds d^{j₀} and d^{j₀−1}.  For j₀ = 0 (m′ = m = 0) the j = 0 step
    // of the recurrence degenerates (its left side carries a factor j),
    // so we start the loop one level up with the known d⁰ = 1, d¹₀₀ = cos θ.
    let (mut jcur_2, mut d_prev, mut d_cur) = if j0_2 == 0 {
        (2, 1.0, ct)
    } else {
        // At j = j₀ one of |m′|, |m| equals j₀, so the d^{j₀−1} coefficient
        // √(j₀²−m′²)√(j₀²−m²) vanishes and the placeholder 0.0 is never felt.
        (j0_2, 0.0, d_boundary(j0_2, r2, c2, theta))
    };

    while jcur_2 < j2 {
        let j = jcur_2 as f64 / 2.0;
        let jn = j + 1.0;
        let lhs_coeff = j * ((jn * jn - mp * mp) * (jn * jn - m * m)).sqrt();
        let mid = (2.0 * j + 1.0) * (j * jn * ct - mp * m);
        let low = jn * ((j * j - mp * mp) * (j * j - m * m)).sqrt();
        let d_next = (mid * d_cur - low * d_prev) / lhs_coeff;
        d_prev = d_cur;
        d_cur = d_next;
        jcur_2 += 2;
    }
    d_cur
}

/// Wigner d-function d^j_{m_row, m_col}(θ).
///
/// θ may be any finite real; the function is a polynomial in cos(θ/2),
/// sin(θ/2) and needs no chart restrictions.
pub fn d_small(j: HalfInt, m_row: HalfInt, m_col: HalfInt, theta: f64) -> Result<f64> {
    check_index_pair(j, m_row)?;
    check_index_pair(j, m_col)?;
    if !theta.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got theta = {theta}")));
    }
    let (j2, r2, c2) = (j.doubled(), m_row.doubled(), m_col.doubled());
    if j2 <= 5 {
        Ok(d_by_sum(j2, r2, c2, theta))
    } else if r2.abs() == j2 || c2.abs() == j2 {
        Ok(d_boundary(j2, r2, c2, theta))
    } else {
        Ok(d_by_recurrence(j2, r2, c2, theta))
    }
}

/// θ-derivative ∂_θ d^j_{m_row,m_col}(θ), computed from d(θ) = exp(θA):
/// ∂_θ d = A·d, i.e. a two-term combination over the *row* index,
///
/// ```text
///   ∂_θ d_{r,c} = ½√((j−r)(j+r+1)) d_{r+1,c} − ½√((j+r)(j−r+1)) d_{r−1,c}.
/// ```
///
/// This is structurally independent of the column-index recursions that
/// the verification routines test, so it can serve as their derivative
/// oracle without circularity.
pub fn d_small_deriv(j: HalfInt, m_row: HalfInt, m_col: HalfInt, theta: f64) -> Result<f64> {
    check_index_pair(j, m_row)?;
    check_index_pair(j, m_col)?;
    let r = m_row.to_f64();
    let jf = j.to_f64();
    let up_coeff = 0.5 * ((jf - r) * (jf + r + 1.0)).sqrt();
    let dn_coeff = 0.5 * ((jf + r) * (jf - r + 1.0)).sqrt();
    let up = if index_pair_valid(j, m_row + HalfInt::ONE) {
        d_small(j, m_row + HalfInt::ONE, m_col, theta)?
    } else {
        0.0
    };
    let dn = if index_pair_valid(j, m_row - HalfInt::ONE) {
        d_small(j, m_row - HalfInt::ONE, m_col, theta)?
    } else {
        0.0
    };
    Ok(up_coeff * up - dn_coeff * dn)
}

/// Rotation function with third Euler angle zero:
/// D^j_{m_row,m_col}(φ,θ,0) = e^{−i·m_row·φ} d^j_{m_row,m_col}(θ).
pub fn d_function(
    j: HalfInt,
    m_row: HalfInt,
    m_col: HalfInt,
    phi: f64,
    theta: f64,
) -> Result<Complex64> {
    if !phi.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got phi = {phi}")));
    }
    let d = d_small(j, m_row, m_col, theta)?;
    Ok(Complex64::from_polar(1.0, -m_row.to_f64() * phi) * d)
}

/// The wave-function angular basis element D^j_{−m,σ}(φ,θ,0) = e^{imφ} d^j_{−m,σ}(θ).
pub fn d_basis(j: HalfInt, m: HalfInt, sigma: HalfInt, phi: f64, theta: f64) -> Result<Complex64> {
    d_function(j, -m, sigma, phi, theta)
}

/// Exact phase (−1)^j = i^{2j} appearing in the spatial-inversion identity
/// for the angular basis,
///
/// ```text
///     D^j_{−m,σ}(φ+π, π−θ, 0) = (−1)^j D^j_{−m,−σ}(φ, θ, 0).
/// ```
pub fn parity_phase(j: HalfInt) -> Complex64 {
    let (re, im) = j.phase_i_pow();
    Complex64::new(re, im)
}

/// Full (2j+1)×(2j+1) matrix d^j(θ), row/column index ascending in
/// m = −j … +j; convenience for conformance tests and matrix oracles.
pub fn d_matrix(j: HalfInt, theta: f64) -> Result<nalgebra::DMatrix<f64>> {
    if j.is_negative() {
        return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
    }
    let n = (j.doubled() + 1) as usize;
    let mut out = nalgebra::DMatrix::zeros(n, n);
    for (ri, r2) in (-j.doubled()..=j.doubled()).step_by(2).enumerate() {
        for (ci, c2) in (-j.doubled()..=j.doubled()).step_by(2).enumerate() {
            out[(ri, ci)] = d_small(j, HalfInt::from_doubled(r2), HalfInt::from_doubled(c2), theta)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn h(d: i32) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    #[test]
    fn identity_at_zero_angle() {
        for j2 in 0..=7 {
            for r2 in (-j2..=j2).step_by(2) {
                for c2 in (-j2..=j2).step_by(2) {
                    let v = d_small(h(j2), h(r2), h(c2), 0.0).unwrap();
                    let want = if r2 == c2 { 1.0 } else { 0.0 };
                    assert!((v - want).abs() < 1e-15, "j2={j2} r2={r2} c2={c2}: {v}");
                }
            }
        }
    }

    #[test]
    fn spin_half_matrix_is_frozen_convention() {
        // The convention anchor: d^{1/2} row/col order (+1/2, −1/2) is
        // [[cos, −sin], [sin, cos]](θ/2).
        for &theta in &[0.3f64, 1.1, 2.8] {
            let c = (theta / 2.0).cos();
            let s = (theta / 2.0).sin();
            assert!((d_small(h(1), h(1), h(1), theta).unwrap() - c).abs() < 1e-15);
            assert!((d_small(h(1), h(1), h(-1), theta).unwrap() + s).abs() < 1e-15);
            assert!((d_small(h(1), h(-1), h(1), theta).unwrap() - s).abs() < 1e-15);
            assert!((d_small(h(1), h(-1), h(-1), theta).unwrap() - c).abs() < 1e-15);
        }
    }

    #[test]
    fn spin_one_matrix_is_frozen_convention() {
        for &theta in &[0.4f64, 1.9] {
            let (ct, st) = (theta.cos(), theta.sin());
            let r2 = std::f64::consts::SQRT_2;
            let table = [
                // (m′2, m2, value)
                (2, 2, (1.0 + ct) / 2.0),
                (2, 0, -st / r2),
                (2, -2, (1.0 - ct) / 2.0),
                (0, 2, st / r2),
                (0, 0, ct),
                (0, -2, -st / r2),
                (-2, 2, (1.0 - ct) / 2.0),
                (-2, 0, st / r2),
                (-2, -2, (1.0 + ct) / 2.0),
            ];
            for (r, c, want) in table {
                let got = d_small(h(2), h(r), h(c), theta).unwrap();
                assert!((got - want).abs() < 1e-15, "d^1_({r},{c})/2: {got} vs {want}");
            }
        }
    }

    #[test]
    fn recurrence_agrees_with_sum_formula() {
        // The factorial sum is valid at any j; force the recurrence path
        // (j2 > 5, interior indices) and compare.
        for j2 in [6, 8, 9, 13, 20] {
            for r2 in (-j2..=j2).step_by(2) {
                for c2 in (-j2..=j2).step_by(2) {
                    for &theta in &[0.17, 1.3, 2.9] {
                        let via_sum = d_by_sum(j2, r2, c2, theta);
                        let via_lib = d_small(h(j2), h(r2), h(c2), theta).unwrap();
                        assert!(
                            (via_sum - via_lib).abs() < 1e-12,
                            "j2={j2} r2={r2} c2={c2} θ={theta}: sum={via_sum} lib={via_lib}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_relations() {
        // d_{m′m} = (−1)^{m′−m} d_{mm′} = d_{−m,−m′}.
        for j2 in [1, 2, 3, 5, 8] {
            for r2 in (-j2..=j2).step_by(2) {
                for c2 in (-j2..=j2).step_by(2) {
                    let theta = 0.9;
                    let a = d_small(h(j2), h(r2), h(c2), theta).unwrap();
                    let b = d_small(h(j2), h(c2), h(r2), theta).unwrap();
                    let sign = if ((r2 - c2) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    assert!((a - sign * b).abs() < 1e-13);
                    let c = d_small(h(j2), h(-c2), h(-r2), theta).unwrap();
                    assert!((a - c).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let hstep = 1e-5;
        for (j2, r2, c2) in [(1, 1, -1), (2, 0, 2), (5, 3, 1), (8, -4, 2), (11, 5, -3)] {
            for &theta in &[0.5, 1.2, 2.2] {
                let num = (d_small(h(j2), h(r2), h(c2), theta + hstep).unwrap()
                    - d_small(h(j2), h(r2), h(c2), theta - hstep).unwrap())
                    / (2.0 * hstep);
                let ana = d_small_deriv(h(j2), h(r2), h(c2), theta).unwrap();
                assert!((num - ana).abs() < 1e-9, "j2={j2} r2={r2} c2={c2}: {num} vs {ana}");
            }
        }
    }

    #[test]
    fn rows_are_unit_vectors() {
        // Unitarity: Σ_σ |D^j_{m,σ}|² = 1.
        for j2 in [0, 1, 2, 4, 6, 9] {
            for r2 in (-j2..=j2).step_by(2) {
                let mut norm = 0.0;
                for c2 in (-j2..=j2).step_by(2) {
                    let v = d_function(h(j2), h(r2), h(c2), 0.77, 1.33).unwrap();
                    norm += v.norm_sqr();
                }
                assert!((norm - 1.0).abs() < 1e-13, "j2={j2} m′2={r2}: {norm}");
            }
        }
    }

    #[test]
    fn parity_identity_pointwise() {
        // D^j_{−m,σ}(φ+π, π−θ) = (−1)^j D^j_{−m,−σ}(φ, θ).
        for (j2, m2, s2) in [(1, 1, 1), (2, 0, 2), (3, -1, 1), (4, 2, -2), (7, 3, 5)] {
            for &(theta, phi) in &[(0.7, 0.3), (1.9, 4.0)] {
                let lhs = d_basis(h(j2), h(m2), h(s2), phi + PI, PI - theta).unwrap();
                let rhs = parity_phase(h(j2)) * d_basis(h(j2), h(m2), h(-s2), phi, theta).unwrap();
                assert!((lhs - rhs).norm() < 1e-13, "j2={j2} m2={m2} s2={s2}");
            }
        }
    }

    #[test]
    fn invalid_indices_rejected() {
        assert!(d_small(h(1), h(3), h(1), 0.5).is_err()); // |m′| > j
        assert!(d_small(h(2), h(1), h(0), 0.5).is_err()); // j − m′ half-odd
        assert!(d_small(h(-2), h(0), h(0), 0.5).is_err()); // negative j
        assert!(d_small(h(1), h(1), h(1), f64::NAN).is_err());
        assert!(WignerIndex::new(h(2), h(2), h(4)).is_err());
        assert!(WignerIndex::new(h(2), h(2), h(-2)).is_ok());
    }

    #[test]
    fn binomial_and_factorial_exact_small() {
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(6, 2), 15.0);
        assert_eq!(binomial(20, 10), 184756.0);
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
    }
}
