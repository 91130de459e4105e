//! Brute-force reference evaluator for the rotation matrices.
//!
//! Independent of the factorial-sum / recurrence machinery in the parent
//! module, this computes d^j(θ) literally as the matrix exponential
//! exp(θA) of the tridiagonal generator
//!
//! ```text
//!     A_{m+1,m} = −½ √((j−m)(j+m+1)),   A_{m−1,m} = +½ √((j+m)(j−m+1)),
//! ```
//!
//! using scaling-and-squaring with a diagonal [6/6] Padé approximant.
//! The only thing the two evaluators share is the generator convention
//! itself, so agreement between them is a meaningful conformance check,
//! and the CLI uses this path to produce defect reports at runtime.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::wigner::HalfInt;

/// The (2j+1)×(2j+1) generator A = −iJ_y, real and skew-symmetric,
/// rows/columns ascending in m = −j … +j.
pub fn generator_matrix(j: HalfInt) -> Result<DMatrix<f64>> {
    if j.is_negative() {
        return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
    }
    let n = (j.doubled() + 1) as usize;
    let jf = j.to_f64();
    let mut a = DMatrix::zeros(n, n);
    for (ci, c2) in (-j.doubled()..=j.doubled()).step_by(2).enumerate() {
        let m = c2 as f64 / 2.0;
        // Sub/superdiagonal entries in column m: row m+1 and row m−1.
        if ci + 1 < n {
            a[(ci + 1, ci)] = -0.5 * ((jf - m) * (jf + m + 1.0)).sqrt();
        }
        if ci > 0 {
            a[(ci - 1, ci)] = 0.5 * ((jf + m) * (jf - m + 1.0)).sqrt();
        }
    }
    Ok(a)
}

/// d^j(θ) = exp(θA) evaluated by scaling-and-squaring Padé; ascending
/// row/column order matching [`crate::wigner::d_matrix`].
pub fn d_matrix_by_exponential(j: HalfInt, theta: f64) -> Result<DMatrix<f64>> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got theta = {theta}")));
    }
    let a = generator_matrix(j)?;
    Ok(expm(&(a * theta)))
}

/// Matrix exponential by scaling-and-squaring with a diagonal [6/6] Padé
/// approximant: scale M by 2^{−s} until its ∞-norm is ≤ 1/2 (where the
/// Padé truncation error is far below machine epsilon), form
/// N(M)/D(M) with the Padé polynomials, then square s times.
pub fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "exponential of a non-square matrix");

    let norm = inf_norm(m);
    let mut s = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        s += 1;
        scale *= 0.5;
    }
    let ms = m * scale;

    // Padé [6/6] coefficients c_k = (12−k)!·6! / (12!·k!·(6−k)!), built by
    // the ratio recurrence c_{k+1} = c_k (6−k) / ((12−k)(k+1)).
    let mut coeffs = [0.0; 7];
    coeffs[0] = 1.0;
    for k in 0..6 {
        coeffs[k + 1] = coeffs[k] * (6.0 - k as f64) / ((12.0 - k as f64) * (k as f64 + 1.0));
    }

    let eye = DMatrix::identity(n, n);
    let mut term = eye.clone(); // M^k, built incrementally
    let mut num = &eye * coeffs[0];
    let mut den = &eye * coeffs[0];
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        term = &term * &ms;
        num += &term * c;
        if k % 2 == 0 {
            den += &term * c;
        } else {
            den -= &term * c;
        }
    }

    let mut result = den
        .lu()
        .solve(&num)
        .expect("Padé denominator singular; input norm should make it well-conditioned");
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
