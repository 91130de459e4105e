//! Ladder-closure admissibility criterion for spin-weighted multiplets.
//!
//! The generalized angular functions with a fixed spin weight λ along the
//! radial direction form a (2j+1)-member multiplet built by applying the
//! lowering operator to a top state ~ e^{ijφ} sin^j θ (1+cosθ)^{λ/2}
//! (1−cosθ)^{−λ/2}.  Repeated lowering produces derivatives of
//!
//! ```text
//!     P(x) = (1+x)^{j+λ} (1−x)^{j−λ},        x = cos θ,
//! ```
//!
//! and the multiplet closes into single-valued, bounded functions exactly
//! when P is a polynomial whose (2j+1)-th derivative vanishes identically.
//! That forces
//!
//!   1.  λ ∈ {0, ±1/2, ±1, ±3/2, …}  (half-integer quantization — for a
//!       monopole weight λ = eg this *is* the charge quantization rule), and
//!   2.  j ∈ {|λ|, |λ|+1, |λ|+2, …}.
//!
//! [`pauli_derivative_check`] performs the polynomial test literally with
//! exact integer coefficients; [`pauli_allowed`] states the closed-form
//! rule.  Agreement of the two over a range of (j, λ) is one of the
//! library's acceptance checks.

use serde::{Deserialize, Serialize};

use super::HalfInt;

/// Outcome of the admissibility rule for a proposed weight λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliVerdict {
    /// λ is not on the half-integer lattice: no multiplet closes.
    Rejected,
    /// λ admissible; j runs over {min_j, min_j + 1, …}.
    AllowedJSet { min_j: HalfInt },
}

impl PauliVerdict {
    /// Whether a given total angular momentum j belongs to the allowed set.
    pub fn allows(&self, j: HalfInt) -> bool {
        match *self {
            PauliVerdict::Rejected => false,
            PauliVerdict::AllowedJSet { min_j } => {
                j >= min_j && (j - min_j).is_integer()
            }
        }
    }
}

/// Closed-form admissibility rule: every half-integer λ (including 0) is
/// allowed, with j ∈ {|λ|, |λ|+1, …}.
pub fn pauli_allowed(lambda: HalfInt) -> PauliVerdict {
    PauliVerdict::AllowedJSet { min_j: lambda.abs() }
}

/// Admissibility for a raw real weight: values off the half-integer
/// lattice (to within 1e−9) are rejected outright.
pub fn pauli_allowed_real(lambda: f64) -> PauliVerdict {
    match HalfInt::try_from_f64(lambda, 1e-9) {
        Some(l) => pauli_allowed(l),
        None => PauliVerdict::Rejected,
    }
}

/// The polynomial criterion, evaluated literally:
/// expand P(x) = (1+x)^{j+λ}(1−x)^{j−λ} with exact integer coefficients
/// (possible iff j+λ and j−λ are nonnegative integers — otherwise P is
/// not a polynomial and the check fails), differentiate 2j+1 times
/// symbolically, and report whether the result is identically zero.
///
/// Since a genuine polynomial here has degree (j+λ)+(j−λ) = 2j, the
/// derivative test passes exactly on the closed-form allowed set; the
/// function is the independent oracle for [`pauli_allowed`].
pub fn pauli_derivative_check(j: HalfInt, lambda: HalfInt) -> bool {
    let p = match (j + lambda).as_integer() {
        Some(v) if v >= 0 => v as usize,
        _ => return false,
    };
    let q = match (j - lambda).as_integer() {
        Some(v) if v >= 0 => v as usize,
        _ => return false,
    };

    // Exact expansion: coeffs[n] = Σ_{i+k=n} C(p,i)·C(q,k)·(−1)^k.
    let mut coeffs: Vec<i128> = vec![0; p + q + 1];
    for i in 0..=p {
        for k in 0..=q {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            coeffs[i + k] += sign * binom_i128(p, i) * binom_i128(q, k);
        }
    }

    // (2j+1)-fold symbolic differentiation; 2j = p + q exactly.
    let order = p + q + 1;
    for _ in 0..order {
        if coeffs.len() <= 1 {
            coeffs = vec![0];
            break;
        }
        coeffs = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &c)| c * n as i128)
            .collect();
    }
    coeffs.iter().all(|&c| c == 0)
}

fn binom_i128(n: usize, k: usize) -> i128 {
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}
