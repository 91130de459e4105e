//! Closed-form monopole and dyon solutions of the SU(2) Yang–Mills–Higgs
//! system (vanishing Higgs self-coupling) on E³, S³ and H³, together with
//! numerical residual evaluators that certify them.
//!
//! # Field content and radial system
//!
//! In the hedgehog substitution Φᵃ = xᵃΦ(r), W⁰ₐ = xᵃ f(r),
//! Wⁱₐ = ε_{iab} xᵇ K(r), the static field equations on a
//! constant-curvature background with conformal factor Σ(r) reduce to
//!
//! ```text
//!   Φ″ + (4/r)Φ′ − 2eΦ(2+er²K)K − (Σ′/Σ)(Φ′+Φ/r)            = 0
//!   K″ + (4/r)K′ − eΦ²(1+er²K)/Σ² − eK²(3+er²K) + (Σ′/Σ)(K′+2K/r) = 0
//! ```
//!
//! for the purely monopole sector (f ≡ 0), and in flat space the dyon
//! triple (Φ, f, K) obeys the same Φ-equation, an identical equation for
//! f, and a K-equation with Φ² replaced by Φ²−f².
//!
//! # Seed functions
//!
//! Substituting 1+er²K = c(r)f₁(R), er²Φ = a(r)f₂(R)+b(r) turns the
//! system into first-order seed equations f₁′ = −f₁f₂, f₂′ = −f₁², whose
//! general solutions split into three elementary families
//!
//! ```text
//!   rational:      f₁ = ±A/(Ax+B),      f₂ = A/(Ax+B)
//!   hyperbolic:    f₁ = ±A/sinh(Ax+B),  f₂ = A/tanh(Ax+B)
//!   trigonometric: f₁ = ±A/sin(Ax+B),   f₂ = A/tan(Ax+B)
//! ```
//!
//! and auxiliary profiles that work in all three geometries at once:
//!
//! ```text
//!   a = a₁r,   b = Σ−2,   c = a₁r/Σ,   R = a₁χ(r) + C,
//! ```
//!
//! with χ the geodesic radius (χ = r flat, 2ρ·arctan(r/2ρ) spherical,
//! 2ρ·artanh(r/2ρ) hyperbolic); note Σ−2 = −(1∓r²/4ρ²) reproduces the
//! per-geometry constants.  The monopole profile pair is then
//!
//! ```text
//!   K = [c·f₁(R) − 1]/(er²),      Φ = [a·f₂(R) + b]/(er²),
//! ```
//!
//! while a second, "trivial" branch K = −1/(er²),
//! Φ = [b₁r + b₂(2−Σ)]/(er²) embeds the Abelian monopole into the
//! non-Abelian scheme (its Φ-equation is linear with the two-dimensional
//! solution space spanned by 1/r and (2−Σ)/r²).
//!
//! # Flat dyons
//!
//! A flat dyon is built from a monopole by the exact rescaling
//!
//! ```text
//!   Φ(r) = Φ̃(κr),  f = cΦ,  K(r) = √(1−c²) K̃(κr),  κ = (1−c²)^{1/4},
//! ```
//!
//! valid for |c| < 1.  The curved analogue is deliberately not provided.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CurvatureKind, CurvatureModel};

/// Evaluation closer than this (in seed-argument units) to a pole of the
/// seed functions is refused rather than returned as a huge number.
pub const SEED_GUARD: f64 = 1e-3;

/// Radii below this are refused: K, Φ ~ 1/(er²) amplifies roundoff there.
pub const SMALL_RADIUS_GUARD: f64 = 1e-6;

/// The three elementary seed-function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedKind {
    Rational,
    Hyperbolic,
    Trigonometric,
}

/// One concrete seed pair (f₁, f₂): family, scale A ≠ 0, shift B, and the
/// ± branch of f₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedFamily {
    pub kind: SeedKind,
    /// Scale constant A.
    pub a: f64,
    /// Shift constant B.
    pub b: f64,
    /// ±1: the sign branch of f₁ (f₂ does not carry it).
    pub sign: i8,
}

impl SeedFamily {
    pub fn new(kind: SeedKind, a: f64, b: f64, sign: i8) -> Result<Self> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::Parameter(format!(
                "seed constants must be finite with A != 0, got A = {a}, B = {b}"
            )));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Parameter(format!("seed sign must be +1 or -1, got {sign}")));
        }
        Ok(SeedFamily { kind, a, b, sign })
    }

    /// Distance from u = Ax+B to the nearest pole of the family
    /// (u = 0 for rational/hyperbolic, u = nπ for trigonometric).
    pub fn pole_distance(&self, x: f64) -> f64 {
        let u = self.a * x + self.b;
        match self.kind {
            SeedKind::Rational | SeedKind::Hyperbolic => u.abs(),
            SeedKind::Trigonometric => {
                let m = u.rem_euclid(std::f64::consts::PI);
                m.min(std::f64::consts::PI - m)
            }
        }
    }

    /// The pair (f₁(x), f₂(x)).  Refuses evaluation within
    /// [`SEED_GUARD`] of a pole.
    pub fn f_pair(&self, x: f64) -> Result<(f64, f64)> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("seed argument must be finite, got x = {x}")));
        }
        if self.pole_distance(x) < SEED_GUARD {
            return Err(Error::Singularity(format!(
                "seed argument x = {x} lies within {SEED_GUARD} of a pole (u = {})",
                self.a * x + self.b
            )));
        }
        let u = self.a * x + self.b;
        let s = f64::from(self.sign);
        Ok(match self.kind {
            SeedKind::Rational => (s * self.a / u, self.a / u),
            // f₂ written as A·cosh/sinh (resp. A·cos/sin) so both members
            // share the single pole structure of 1/sinh (1/sin).
            SeedKind::Hyperbolic => {
                (s * self.a / u.sinh(), self.a * u.cosh() / u.sinh())
            }
            SeedKind::Trigonometric => (s * self.a / u.sin(), self.a * u.cos() / u.sin()),
        })
    }

    /// Max defect of the defining first-order pair f₁′ + f₁f₂ = 0,
    /// f₂′ + f₁² = 0 at x, with derivatives from 5-point central
    /// differences — the numerical certificate that a family member is a
    /// genuine seed solution.
    pub fn ode_defect(&self, x: f64, h: f64) -> Result<f64> {
        let stencil = |i: i32| self.f_pair(x + f64::from(i) * h);
        let (f1_m2, f2_m2) = stencil(-2)?;
        let (f1_m1, f2_m1) = stencil(-1)?;
        let (f1_0, f2_0) = stencil(0)?;
        let (f1_p1, f2_p1) = stencil(1)?;
        let (f1_p2, f2_p2) = stencil(2)?;
        let d1 = (-f1_p2 + 8.0 * f1_p1 - 8.0 * f1_m1 + f1_m2) / (12.0 * h);
        let d2 = (-f2_p2 + 8.0 * f2_p1 - 8.0 * f2_m1 + f2_m2) / (12.0 * h);
        Ok((d1 + f1_0 * f2_0).abs().max((d2 + f1_0 * f1_0).abs()))
    }
}

/// Which closed-form branch a solution belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SolutionKind {
    /// The genuine non-Abelian branch built from a seed pair.
    TypeI {
        /// Profile slope a₁ in a = a₁r (absorbs an overall ±).
        a1: f64,
        /// Additive constant C in R = a₁χ(r) + C.
        c_shift: f64,
        seed: SeedFamily,
    },
    /// Embedded Abelian branch: K = −1/(er²), Φ = [b₁r + b₂(2−Σ)]/(er²).
    Trivial { b1: f64, b2: f64 },
}

/// A (K(r), Φ(r)) profile pair on a fixed geometry with gauge coupling e.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonopoleSolution {
    pub model: CurvatureModel,
    pub kind: SolutionKind,
    /// Gauge coupling e > 0.
    pub e: f64,
}

/// Auxiliary profile values (a, b, c, R) at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxProfiles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub big_r: f64,
}

/// The unified auxiliary profiles a = a₁r, b = Σ−2, c = a₁r/Σ,
/// R = a₁χ(r) + C.  Primarily meaningful on S³/H³; on E³ they degenerate
/// to the flat bookkeeping a = a₁r, b = −1, c = a₁r, R = a₁r + C (the
/// flat seed constants absorb a₁ and C).
pub fn abcr_profiles(model: &CurvatureModel, a1: f64, c_shift: f64, r: f64) -> Result<AuxProfiles> {
    let sigma = model.sigma(r)?;
    let chi = model.chi_from_r(r)?;
    Ok(AuxProfiles {
        a: a1 * r,
        b: sigma - 2.0,
        c: a1 * r / sigma,
        big_r: a1 * chi + c_shift,
    })
}

/// Consistency defect of the profile construction at radius r: checks the
/// relations that make (a, b, c, R) a valid substitution,
///
/// ```text
///   cΣ = a,          R′ = a/(rΣ),
///   2ab = rΣ(−3a′ + 2(Σ′/Σ)a + a/r),
/// ```
///
/// plus the constant relations of the linear-profile ansatz
/// a = a₁r + a₂(2−Σ), b = b₁r + b₂(2−Σ) specialized to the admitted
/// branch (a₂ = 0, b₁ = 0, b₂ = −1):
///
/// ```text
///   2a₂b₂ = a₂,   a₁b₂ + a₂b₁ = −a₁,   a₁b₁ − ½a₂b₂/ρ² = (5/4)a₂/ρ².
/// ```
///
/// Derivatives R′, a′ are taken by 5-point central differences.
pub fn profile_relations_defect(model: &CurvatureModel, a1: f64, c_shift: f64, r: f64) -> Result<f64> {
    let h = 1e-4 * r.max(1.0);
    let p = abcr_profiles(model, a1, c_shift, r)?;
    let sigma = model.sigma(r)?;
    let sigma_p = model.sigma_prime(r)?;

    let at = |rr: f64| abcr_profiles(model, a1, c_shift, rr);
    let (m2, m1, p1, p2) = (at(r - 2.0 * h)?, at(r - h)?, at(r + h)?, at(r + 2.0 * h)?);
    let r_prime = (-p2.big_r + 8.0 * p1.big_r - 8.0 * m1.big_r + m2.big_r) / (12.0 * h);
    let a_prime = (-p2.a + 8.0 * p1.a - 8.0 * m1.a + m2.a) / (12.0 * h);

    let mut defect = (p.c * sigma - p.a).abs();
    defect = defect.max((r_prime - p.a / (r * sigma)).abs());
    let rhs = r * sigma * (-3.0 * a_prime + 2.0 * (sigma_p / sigma) * p.a + p.a / r);
    defect = defect.max((2.0 * p.a * p.b - rhs).abs());

    // Constant relations at (a₂, b₁, b₂) = (0, 0, −1):
    let (a2, b1, b2): (f64, f64, f64) = (0.0, 0.0, -1.0);
    let rho2 = model.rho * model.rho;
    defect = defect.max((2.0 * a2 * b2 - a2).abs());
    defect = defect.max((a1 * b2 + a2 * b1 + a1).abs());
    defect = defect.max((a1 * b1 - 0.5 * a2 * b2 / rho2 - 1.25 * a2 / rho2).abs());
    Ok(defect)
}

impl MonopoleSolution {
    pub fn new(model: CurvatureModel, kind: SolutionKind, e: f64) -> Result<Self> {
        if !(e > 0.0) || !e.is_finite() {
            return Err(Error::Parameter(format!(
                "gauge coupling must be positive and finite, got e = {e}"
            )));
        }
        Ok(MonopoleSolution { model, kind, e })
    }

    /// The profile pair (K(r), Φ(r)).
    pub fn eval_k_phi(&self, r: f64) -> Result<(f64, f64)> {
        if !(r >= SMALL_RADIUS_GUARD) {
            return Err(Error::Singularity(format!(
                "radius below small-r guard {SMALL_RADIUS_GUARD}, got r = {r}"
            )));
        }
        self.model.check_r(r)?;
        let er2 = self.e * r * r;
        match &self.kind {
            SolutionKind::TypeI { a1, c_shift, seed } => {
                let p = abcr_profiles(&self.model, *a1, *c_shift, r)?;
                let (f1, f2) = seed.f_pair(p.big_r)?;
                Ok(((p.c * f1 - 1.0) / er2, (p.a * f2 + p.b) / er2))
            }
            SolutionKind::Trivial { b1, b2 } => {
                let sigma = self.model.sigma(r)?;
                Ok((-1.0 / er2, (b1 * r + b2 * (2.0 - sigma)) / er2))
            }
        }
    }

    /// Left-hand sides (res_Φ, res_K) of the two monopole field equations
    /// at r, with derivatives from 5-point central differences of step
    /// h = 1e−4·max(1, r).  Near-zero values certify the profiles.
    pub fn residual_field_equations(&self, r: f64) -> Result<(f64, f64)> {
        let k_fn = |rr: f64| self.eval_k_phi(rr).map(|(k, _)| k);
        let phi_fn = |rr: f64| self.eval_k_phi(rr).map(|(_, p)| p);
        residual_curved_system(&self.model, self.e, k_fn, phi_fn, r)
    }

    fn is_flat(&self) -> bool {
        self.model.kind == CurvatureKind::Euclid
    }
}

/// Five-point central first and second derivatives of a callable.
fn fd_derivatives<F>(f: F, r: f64, h: f64) -> Result<(f64, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let (m2, m1, v0, p1, p2) = (f(r - 2.0 * h)?, f(r - h)?, f(r)?, f(r + h)?, f(r + 2.0 * h)?);
    let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    let d2 = (-p2 + 16.0 * p1 - 30.0 * v0 + 16.0 * m1 - m2) / (12.0 * h * h);
    Ok((v0, d1, d2))
}

/// Residuals (res_Φ, res_K) of the purely monopole system on an arbitrary
/// geometry, for arbitrary profile callables; the perturbation-sensitivity
/// checks feed deliberately corrupted profiles through this.
pub fn residual_curved_system<FK, FP>(
    model: &CurvatureModel,
    e: f64,
    k_fn: FK,
    phi_fn: FP,
    r: f64,
) -> Result<(f64, f64)>
where
    FK: Fn(f64) -> Result<f64>,
    FP: Fn(f64) -> Result<f64>,
{
    let h = 1e-4 * r.max(1.0);
    let (k, k1, k2) = fd_derivatives(&k_fn, r, h)?;
    let (phi, p1, p2) = fd_derivatives(&phi_fn, r, h)?;
    let sigma = model.sigma(r)?;
    let sigma_ratio = model.sigma_prime(r)? / sigma;
    let er2k = e * r * r * k;

    let res_phi = p2 + 4.0 * p1 / r - 2.0 * e * phi * (2.0 + er2k) * k - sigma_ratio * (p1 + phi / r);
    let res_k = k2 + 4.0 * k1 / r - e * phi * phi * (1.0 + er2k) / (sigma * sigma)
        - e * k * k * (3.0 + er2k)
        + sigma_ratio * (k1 + 2.0 * k / r);
    Ok((res_phi, res_k))
}

/// Residuals (res_Φ, res_f, res_K) of the flat dyon system for arbitrary
/// profile callables:
///
/// ```text
///   Φ″ + (4/r)Φ′ − 2eΦ(2+er²K)K                      = 0
///   f″ + (4/r)f′ − 2ef(2+er²K)K                      = 0
///   K″ + (4/r)K′ + e(f²−Φ²)(1+er²K) − eK²(3+er²K)    = 0 .
/// ```
pub fn residual_flat_dyon_system<FK, FP, FF>(
    e: f64,
    k_fn: FK,
    phi_fn: FP,
    f_fn: FF,
    r: f64,
) -> Result<(f64, f64, f64)>
where
    FK: Fn(f64) -> Result<f64>,
    FP: Fn(f64) -> Result<f64>,
    FF: Fn(f64) -> Result<f64>,
{
    let h = 1e-4 * r.max(1.0);
    let (k, k1, k2) = fd_derivatives(&k_fn, r, h)?;
    let (phi, p1d, p2d) = fd_derivatives(&phi_fn, r, h)?;
    let (f, f1d, f2d) = fd_derivatives(&f_fn, r, h)?;
    let er2k = e * r * r * k;

    let res_phi = p2d + 4.0 * p1d / r - 2.0 * e * phi * (2.0 + er2k) * k;
    let res_f = f2d + 4.0 * f1d / r - 2.0 * e * f * (2.0 + er2k) * k;
    let res_k = k2 + 4.0 * k1 / r + e * (f * f - phi * phi) * (1.0 + er2k)
        - e * k * k * (3.0 + er2k);
    Ok((res_phi, res_f, res_k))
}

/// A flat dyon obtained from a flat monopole by the |c| < 1 rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyonSolution {
    pub base: MonopoleSolution,
    /// Electric admixture constant, f = cΦ, |c| < 1.
    pub c: f64,
}

/// Builds the dyon triple from a flat monopole.  Curved bases are
/// rejected: no analogous closed construction is provided off E³.
pub fn dyon_from_monopole(base: MonopoleSolution, c: f64) -> Result<DyonSolution> {
    if !base.is_flat() {
        return Err(Error::Unsupported(
            "dyon rescaling is defined only on the flat model".into(),
        ));
    }
    if !(c.abs() < 1.0) {
        return Err(Error::Parameter(format!(
            "electric admixture must satisfy |c| < 1, got c = {c}"
        )));
    }
    Ok(DyonSolution { base, c })
}

impl DyonSolution {
    /// Radial rescale factor κ = (1−c²)^{1/4}.
    pub fn kappa(&self) -> f64 {
        (1.0 - self.c * self.c).powf(0.25)
    }

    /// The dyon triple (K, Φ, f) at r:
    /// Φ(r) = Φ̃(κr), f = cΦ, K(r) = √(1−c²)·K̃(κr).
    pub fn eval_k_phi_f(&self, r: f64) -> Result<(f64, f64, f64)> {
        let kappa = self.kappa();
        let (kt, pt) = self.base.eval_k_phi(kappa * r)?;
        let phi = pt;
        Ok((kappa * kappa * kt, phi, self.c * phi))
    }

    /// Residuals of the flat dyon system on the rescaled triple.
    pub fn residual_dyon_equations(&self, r: f64) -> Result<(f64, f64, f64)> {
        residual_flat_dyon_system(
            self.base.e,
            |rr| self.eval_k_phi_f(rr).map(|(k, _, _)| k),
            |rr| self.eval_k_phi_f(rr).map(|(_, p, _)| p),
            |rr| self.eval_k_phi_f(rr).map(|(_, _, f)| f),
            r,
        )
    }
}

/// Flat serialization record for a solution's parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub model: CurvatureKind,
    pub rho: f64,
    /// "type_i" or "trivial".
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<SeedKind>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a_const: Option<f64>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b_const: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<f64>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c_shift: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<f64>,
    pub e: f64,
}

impl From<&MonopoleSolution> for SolutionRecord {
    fn from(s: &MonopoleSolution) -> Self {
        let mut rec = SolutionRecord {
            model: s.model.kind,
            rho: s.model.rho,
            kind: String::new(),
            family: None,
            a_const: None,
            b_const: None,
            sign: None,
            a1: None,
            c_shift: None,
            b1: None,
            b2: None,
            e: s.e,
        };
        match &s.kind {
            SolutionKind::TypeI { a1, c_shift, seed } => {
                rec.kind = "type_i".into();
                rec.family = Some(seed.kind);
                rec.a_const = Some(seed.a);
                rec.b_const = Some(seed.b);
                rec.sign = Some(seed.sign);
                rec.a1 = Some(*a1);
                rec.c_shift = Some(*c_shift);
            }
            SolutionKind::Trivial { b1, b2 } => {
                rec.kind = "trivial".into();
                rec.b1 = Some(*b1);
                rec.b2 = Some(*b2);
            }
        }
        rec
    }
}

impl TryFrom<&SolutionRecord> for MonopoleSolution {
    type Error = Error;

    fn try_from(rec: &SolutionRecord) -> Result<Self> {
        let model = CurvatureModel::new(rec.model, rec.rho)?;
        let kind = match rec.kind.as_str() {
            "type_i" => {
                let missing = || Error::Parameter("type_i record needs family, A, B, sign, a1, C".into());
                SolutionKind::TypeI {
                    a1: rec.a1.ok_or_else(missing)?,
                    c_shift: rec.c_shift.ok_or_else(missing)?,
                    seed: SeedFamily::new(
                        rec.family.ok_or_else(missing)?,
                        rec.a_const.ok_or_else(missing)?,
                        rec.b_const.ok_or_else(missing)?,
                        rec.sign.ok_or_else(missing)?,
                    )?,
                }
            }
            "trivial" => SolutionKind::Trivial {
                b1: rec.b1.ok_or_else(|| Error::Parameter("trivial record needs b1, b2".into()))?,
                b2: rec.b2.ok_or_else(|| Error::Parameter("trivial record needs b1, b2".into()))?,
            },
            other => return Err(Error::Parameter(format!("unknown solution kind '{other}'"))),
        };
        MonopoleSolution::new(model, kind, rec.e)
    }
}
