//! Spin-weight recursion identities for the angular basis D_σ ≡ D^j_{−m,σ}.
//!
//! All separations of variables in this library rest on two families of
//! exact identities that shift the weight σ by one (out-of-range
//! neighbors count as zero — the coefficient in front of them vanishes
//! exactly at the boundary, so zero-extension is not an approximation):
//!
//! ```text
//!   ∂_θ D_σ               = ½√((j+σ)(j−σ+1)) D_{σ−1} − ½√((j−σ)(j+σ+1)) D_{σ+1}
//!   (m + σ cosθ)/sinθ D_σ = ½√((j+σ)(j−σ+1)) D_{σ−1} + ½√((j−σ)(j+σ+1)) D_{σ+1}
//! ```
//!
//! Their sum and difference give the first-order ladder that the angular
//! part of the Dirac operator applies to the two spinor weights
//! σ = k ± ½ of a charge-k monopole background:
//!
//! ```text
//!   (∂_θ + (m + (k+½)cosθ)/sinθ) D_{k+1/2} = +ν D_{k−1/2}
//!   (∂_θ − (m + (k−½)cosθ)/sinθ) D_{k−1/2} = −ν D_{k+1/2}
//!   ν = √((j+½)² − k²),
//! ```
//!
//! which is where the effective angular eigenvalue ν of the radial
//! systems comes from.  At the minimal momentum j = |k| − ½ one has
//! ν = 0 and a single surviving weight σ = ±j, so the ladder annihilates
//! the state: the angular operator vanishes identically on minimal
//! multiplets.
//!
//! For integer j the weights σ ∈ {−1, 0, +1} carried by a vector triplet
//! obey the same two identities with coefficients ½√(j(j+1)) and
//! ½√((j−1)(j+2)).
//!
//! The checking routine evaluates every identity at φ = 0, where each
//! D_σ reduces to the real d^j_{−m,σ}(θ) (the common phase e^{imφ}
//! cancels inside any single identity), and uses the row-index derivative
//! of [`d_small_deriv`](crate::wigner::d_small_deriv) — a structurally
//! different linear relation — as the ∂_θ evaluator, so the test is not
//! circular.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::wigner::{check_index_pair, d_small, d_small_deriv, index_pair_valid, HalfInt};

/// Effective angular eigenvalue ν = √((j+½)² − k²) of the spin-½
/// problem on a charge-k background; real for the admissible j ≥ |k|−½.
pub fn nu_factor(j: HalfInt, k: HalfInt) -> f64 {
    let jf = j.to_f64() + 0.5;
    let kf = k.to_f64();
    let v = jf * jf - kf * kf;
    // Clamp the tiny negative roundoff at ν = 0 (j_min) away.
    v.max(0.0).sqrt()
}

/// ½√((j+σ)(j−σ+1)): coefficient of the σ−1 neighbor.
fn coeff_down(j: f64, s: f64) -> f64 {
    0.5 * ((j + s) * (j - s + 1.0)).max(0.0).sqrt()
}

/// ½√((j−σ)(j+σ+1)): coefficient of the σ+1 neighbor.
fn coeff_up(j: f64, s: f64) -> f64 {
    0.5 * ((j - s) * (j + s + 1.0)).max(0.0).sqrt()
}

fn d_or_zero(j: HalfInt, m: HalfInt, sigma: HalfInt, theta: f64) -> Result<f64> {
    if index_pair_valid(j, sigma) {
        d_small(j, -m, sigma, theta)
    } else {
        Ok(0.0)
    }
}

fn check_angle_interior(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got theta = {theta}")));
    }
    let st = theta.sin();
    if st.abs() < 1e-12 {
        return Err(Error::Singularity(format!(
            "cot-weighted identities need sinθ bounded away from 0, got theta = {theta}"
        )));
    }
    Ok(st)
}

/// Absolute defects of the two basic identities at weight σ:
/// (derivative identity, cot-weighted identity).
pub fn sigma_identity_defects(
    j: HalfInt,
    m: HalfInt,
    sigma: HalfInt,
    theta: f64,
) -> Result<(f64, f64)> {
    check_index_pair(j, m)?;
    check_index_pair(j, sigma)?;
    let st = check_angle_interior(theta)?;
    let ct = theta.cos();

    let (jf, sf, mf) = (j.to_f64(), sigma.to_f64(), m.to_f64());
    let cur = d_small(j, -m, sigma, theta)?;
    let down = d_or_zero(j, m, sigma - HalfInt::ONE, theta)?;
    let up = d_or_zero(j, m, sigma + HalfInt::ONE, theta)?;
    let (a, b) = (coeff_down(jf, sf), coeff_up(jf, sf));

    let deriv = d_small_deriv(j, -m, sigma, theta)?;
    let defect_deriv = (deriv - (a * down - b * up)).abs();

    let weight = (mf + sf * ct) / st;
    let defect_cot = (weight * cur - (a * down + b * up)).abs();
    Ok((defect_deriv, defect_cot))
}

/// Defect of the combined ν-ladder on the monopole spinor weights
/// σ = k ± ½ (see module docs); at j = |k| − ½ this is precisely the
/// check that the angular operator annihilates the minimal multiplet.
pub fn nu_ladder_defect(j: HalfInt, m: HalfInt, k: HalfInt, theta: f64) -> Result<f64> {
    check_index_pair(j, m)?;
    let st = check_angle_interior(theta)?;
    let ct = theta.cos();
    let nu = nu_factor(j, k);
    let mf = m.to_f64();

    let s_hi = k + HalfInt::HALF;
    let s_lo = k - HalfInt::HALF;
    let mut defect = 0.0f64;

    if index_pair_valid(j, s_hi) {
        let lhs = d_small_deriv(j, -m, s_hi, theta)?
            + (mf + s_hi.to_f64() * ct) / st * d_small(j, -m, s_hi, theta)?;
        let rhs = nu * d_or_zero(j, m, s_lo, theta)?;
        defect = defect.max((lhs - rhs).abs());
    }
    if index_pair_valid(j, s_lo) {
        let lhs = d_small_deriv(j, -m, s_lo, theta)?
            - (mf + s_lo.to_f64() * ct) / st * d_small(j, -m, s_lo, theta)?;
        let rhs = -nu * d_or_zero(j, m, s_hi, theta)?;
        defect = defect.max((lhs - rhs).abs());
    }
    if !index_pair_valid(j, s_hi) && !index_pair_valid(j, s_lo) {
        return Err(Error::Index(format!(
            "neither spinor weight k ± 1/2 = {s_lo}, {s_hi} is a valid weight for j = {j}"
        )));
    }
    Ok(defect)
}

/// Outcome of a recursion sweep: the largest absolute defect among the
/// identities that apply, plus a count of identities skipped because
/// their base weight does not exist for this (j, k) combination.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RecursionReport {
    pub max_abs_defect: f64,
    pub checked: usize,
    pub skipped: usize,
}

/// Evaluates every applicable weight-shift identity at (j, m, k, θ):
/// the spinor weights σ = k ± ½ with their derivative, cot-weighted and
/// ν-ladder forms, and — for integer j — the vector weights
/// σ ∈ {−1, 0, +1}.  Weights that do not exist for this j (wrong
/// lattice, or |σ| > j) are skipped and counted in the report.
pub fn recursion_check_abelian(
    j: HalfInt,
    m: HalfInt,
    k: HalfInt,
    theta: f64,
) -> Result<RecursionReport> {
    check_index_pair(j, m)?;
    check_angle_interior(theta)?;

    // Collect candidate weights without duplicates (k = ±1/2 with integer
    // j makes the spinor and vector families overlap).
    let mut sigmas: Vec<HalfInt> = vec![k - HalfInt::HALF, k + HalfInt::HALF];
    if j.is_integer() {
        for s in [-1, 0, 1] {
            let s = HalfInt::from_int(s);
            if !sigmas.contains(&s) {
                sigmas.push(s);
            }
        }
    }

    let mut report = RecursionReport {
        max_abs_defect: 0.0,
        checked: 0,
        skipped: 0,
    };
    for s in sigmas {
        if index_pair_valid(j, s) {
            let (d1, d2) = sigma_identity_defects(j, m, s, theta)?;
            report.max_abs_defect = report.max_abs_defect.max(d1).max(d2);
            report.checked += 2;
        } else {
            report.skipped += 1;
        }
    }
    // The combined ladder, when at least one spinor weight exists.
    if index_pair_valid(j, k + HalfInt::HALF) || index_pair_valid(j, k - HalfInt::HALF) {
        let d = nu_ladder_defect(j, m, k, theta)?;
        report.max_abs_defect = report.max_abs_defect.max(d);
        report.checked += 1;
    }
    Ok(report)
}
