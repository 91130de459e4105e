//! Discrete symmetries and conserved operators of the monopole–fermion
//! problem: spatial reflection in the spherical tetrad, the composite
//! isotopic reflection N̂_A and its consistency conditions, spherical-basis
//! Dirac angular operators (Johnson–Lippmann-type K̂), the SU(2) total-moment
//! realizations behind the Pauli criterion, and the reflection selection
//! rules those operators generate.
//!
//! # Angular separation templates
//!
//! Everything acts on separated states whose angular content is carried by
//! the basis functions D^j_{−m,σ}(φ,θ,0).  Two templates appear:
//!
//! ```text
//!   Abelian bispinor, charge k:   (f₁ D_{k−1/2}, f₂ D_{k+1/2}, f₃ D_{k−1/2}, f₄ D_{k+1/2}),
//!
//!   isotopic doublet (integer j):
//!     T_{+1/2} ⊗ (f₁ D_{−1}, f₂ D_{0}, f₃ D_{−1}, f₄ D_{0})
//!   + T_{−1/2} ⊗ (g₁ D_{0}, g₂ D_{+1}, g₃ D_{0}, g₄ D_{+1}),
//! ```
//!
//! where D_σ is shorthand for D^j_{−m,σ}.  At j = 0 the weight-(±1) slots
//! are meaningless and must vanish, which removes f₁, f₃, g₂, g₄.
//!
//! # Reflections
//!
//! Under spatial inversion (θ,φ) → (π−θ, φ+π) the basis obeys
//! D^j_{−m,σ}(φ+π, π−θ, 0) = (−1)^j D^j_{−m,−σ}(φ,θ,0), so the bispinor
//! reflection in the spherical basis is purely algebraic: reverse the four
//! components with a sign and flip σ.  On the Abelian monopole templates
//! the flipped weights belong to the *opposite* charge −k, so no single
//! charge sector admits a reflection eigenvector; the verifiable content is
//! the cross-sector identity
//!
//! ```text
//!   Ψ^{+k}_δ(−x̂) = δ(−1)^{j+1} · Π_sph · Ψ^{−k}_δ(x̂),
//! ```
//!
//! which this module certifies pointwise.  On the doublet the charge swap
//! is replaced by the isotopic reflection π̂_A = σ¹e^{iAσ³} (acting as
//! T_{±1/2} ↦ e^{±iA}T_{∓1/2}), giving the one-parameter family
//! N̂_A = π̂_A ⊗ P̂_bisp ⊗ P̂ with eigenvalues δ(−1)^{j+1} exactly on the
//! constrained states g_i = δe^{iA}f_{5−i}.  Changing A is an isotopic
//! gauge move: N̂_A = U(A) N̂₀ U(A)^{−1} with U(A) = diag(1, e^{iA}).
//!
//! # Consistency of N̂_A on interacting backgrounds
//!
//! Demanding the constrained form solve the full doublet radial system
//! twice over (once per isotopic row) yields an over-determined system; the
//! difference of the paired equations reduces to the algebraic conditions
//!
//! ```text
//!   F̃ f₃ − Φ̃ f₁ = 0,            F̃ f₄ − Φ̃ f₂ − δ sin(A) (W/sinχ) f₂ = 0,
//!   F̃ f₁ − Φ̃ f₃ = 0,            F̃ f₂ − Φ̃ f₄ − δ sin(A) (W/sinχ) f₄ = 0,
//! ```
//!
//! so the reflection survives only on backgrounds with vanishing Coulomb
//! and scalar terms (F̃ = Φ̃ = 0), and a nonzero W-profile further pins the
//! phase to sin A = 0, i.e. e^{iA} = ±1.  `overdetermined_defect` measures
//! these conditions on a sampled solution.
//!
//! # SU(2) realizations and the angular ladder
//!
//! Five concrete total-moment realizations are represented as matrices in
//! the D-function basis by applying the differential operators
//!
//! ```text
//!   J_± = e^{±iφ}(±∂_θ + i·cotθ·∂_φ + τ(θ)/sinθ),     J₃ = l₃ + shift,
//! ```
//!
//! to the sector basis e^{i(m+w)φ} d^j_{−m,σ}(θ) and extracting the ladder
//! coefficients numerically (the θ-dependence must close on the neighbour
//! d-functions; the closure defect is reported).  The weight term τ and the
//! φ-winding offset w encode the gauge: τ = −σ for the Schwinger-type
//! frames, τ = −σ ± k·cosθ with w = ±k for the string gauges, whose
//! J₃ = l₃ ∓ k realizations are exposed through the winding shift.
//!
//! Matrix entries here are exact up to roundoff, so commutator defects
//! certify the Lie-algebra closure at the 1e−12 level for j ≤ 6.

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;
use serde::Serialize;

use crate::dirac_radial::WProfile;
use crate::error::{Error, Result};
use crate::gauge::{iso_transition_gibbs, spinor_from_gibbs, AbelianGaugeKind, IsoGaugeFrame};
use crate::wigner::recursion::nu_factor;
use crate::wigner::{d_basis, d_small, d_small_deriv, parity_phase, HalfInt};

/// Matching tolerance used when testing an angular grid for closure under
/// the reflection (θ,φ) → (π−θ, φ+π).
pub const GRID_CLOSURE_TOL: f64 = 1e-9;

fn phase(a: f64) -> Complex64 {
    Complex64::from_polar(1.0, a)
}

fn check_sign(name: &str, s: i8) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be +1 or -1, got {s}")))
    }
}

/// Validity of a weight pair: |x| ≤ j with j − x an integer.
fn weight_ok(j: HalfInt, x: HalfInt) -> bool {
    x.abs() <= j && (j - x).is_integer()
}

fn cmax4(v: &[Complex64; 4]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn mat_max(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Frames and separated states
// ---------------------------------------------------------------------------

/// Which orthonormal tetrad the bispinor components refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TetradFrame {
    Spherical,
    Cartesian,
}

/// A separated Abelian bispinor state of charge k: radial amplitudes f₁…f₄
/// against the angular slots (D_{k−1/2}, D_{k+1/2}, D_{k−1/2}, D_{k+1/2}).
///
/// Slots whose weight violates |k ± 1/2| ≤ j must carry amplitude zero;
/// this is exactly the minimal-j truncation, where only one weight
/// survives.  k = 0 reproduces the free electron templates (j half-odd).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbelianSeparatedState {
    pub j: HalfInt,
    pub m: HalfInt,
    /// Charge product k = eg.
    pub k: HalfInt,
    pub f: [Complex64; 4],
}

impl AbelianSeparatedState {
    /// Weight of slot i (0-based): k − 1/2 for the odd components,
    /// k + 1/2 for the even ones.
    fn sigma(k: HalfInt, i: usize) -> HalfInt {
        if i % 2 == 0 {
            k - HalfInt::HALF
        } else {
            k + HalfInt::HALF
        }
    }

    pub fn new(j: HalfInt, m: HalfInt, k: HalfInt, f: [Complex64; 4]) -> Result<Self> {
        if j.is_negative() {
            return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
        }
        if !weight_ok(j, m) {
            return Err(Error::Index(format!("projection m = {m} invalid for j = {j}")));
        }
        for (i, amp) in f.iter().enumerate() {
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::Domain("radial amplitudes must be finite".into()));
            }
            let s = Self::sigma(k, i);
            if !weight_ok(j, s) && amp.norm() != 0.0 {
                return Err(Error::Index(format!(
                    "slot {} carries weight {s}, which does not exist at j = {j}; its amplitude must vanish",
                    i + 1
                )));
            }
        }
        // At least one slot must be representable, otherwise the template is empty.
        if !(0..4).any(|i| weight_ok(j, Self::sigma(k, i))) {
            return Err(Error::Index(format!("no angular slot of charge k = {k} exists at j = {j}")));
        }
        Ok(AbelianSeparatedState { j, m, k, f })
    }

    /// The reflection-grading eigenstate: f₄ = δf₁ and f₃ = δf₂.
    pub fn constrained(j: HalfInt, m: HalfInt, k: HalfInt, f1: Complex64, f2: Complex64, delta: i8) -> Result<Self> {
        check_sign("delta", delta)?;
        let d = f64::from(delta);
        Self::new(j, m, k, [f1, f2, f2 * d, f1 * d])
    }

    /// Max deviation from the grading f₄ = δf₁, f₃ = δf₂, relative to the
    /// largest amplitude.
    pub fn constraint_defect(&self, delta: i8) -> Result<f64> {
        check_sign("delta", delta)?;
        let d = f64::from(delta);
        let scale = cmax4(&self.f).max(f64::MIN_POSITIVE);
        Ok(((self.f[3] - self.f[0] * d).norm().max((self.f[2] - self.f[1] * d).norm())) / scale)
    }

    /// The partner state of opposite charge with the same radial content
    /// (legitimate because the radial system depends on k only through
    /// ν = √((j+1/2)² − k²)).
    pub fn charge_reflected(&self) -> Self {
        AbelianSeparatedState { j: self.j, m: self.m, k: -self.k, f: self.f }
    }

    /// Angular evaluation of component i (0-based) at (θ, φ).
    pub fn eval(&self, i: usize, theta: f64, phi: f64) -> Result<Complex64> {
        if i >= 4 {
            return Err(Error::Index(format!("component index must be 0..4, got {i}")));
        }
        if self.f[i].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.f[i] * d_basis(self.j, self.m, Self::sigma(self.k, i), phi, theta)?)
    }
}

/// A separated isotopic-doublet state: radial amplitudes f₁…f₄ on the
/// upper isotopic row (weights −1, 0, −1, 0) and g₁…g₄ on the lower row
/// (weights 0, +1, 0, +1), for integer j.
///
/// The frame tags record which isotopic gauge and tetrad the components
/// refer to; the discrete-operator machinery below is tied to the
/// Schwinger isotopic frame and spherical tetrad, where the angular
/// separation holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatedDoubletState {
    pub j: HalfInt,
    pub m: HalfInt,
    pub f: [Complex64; 4],
    pub g: [Complex64; 4],
    pub iso_frame: IsoGaugeFrame,
    pub tetrad_frame: TetradFrame,
}

impl SeparatedDoubletState {
    /// Weight of upper-row slot i: −1 for odd components, 0 for even.
    fn sigma_f(i: usize) -> HalfInt {
        if i % 2 == 0 {
            HalfInt::from_int(-1)
        } else {
            HalfInt::ZERO
        }
    }

    /// Weight of lower-row slot i: 0 for odd components, +1 for even.
    fn sigma_g(i: usize) -> HalfInt {
        if i % 2 == 0 {
            HalfInt::ZERO
        } else {
            HalfInt::ONE
        }
    }

    pub fn new(j: HalfInt, m: HalfInt, f: [Complex64; 4], g: [Complex64; 4]) -> Result<Self> {
        let ji = j
            .as_integer()
            .ok_or_else(|| Error::Index(format!("doublet states carry integer j, got j = {j}")))?;
        if ji < 0 {
            return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
        }
        if !weight_ok(j, m) {
            return Err(Error::Index(format!("projection m = {m} invalid for j = {j}")));
        }
        for amp in f.iter().chain(g.iter()) {
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::Domain("radial amplitudes must be finite".into()));
            }
        }
        if ji == 0 {
            let bad = f[0].norm() != 0.0 || f[2].norm() != 0.0 || g[1].norm() != 0.0 || g[3].norm() != 0.0;
            if bad {
                return Err(Error::Index(
                    "at j = 0 the weight-(−1) and weight-(+1) slots do not exist: f₁, f₃, g₂, g₄ must vanish".into(),
                ));
            }
        }
        Ok(SeparatedDoubletState {
            j,
            m,
            f,
            g,
            iso_frame: IsoGaugeFrame::SchwingerIso,
            tetrad_frame: TetradFrame::Spherical,
        })
    }

    /// The N̂_A eigenstate built from a free upper row: g_i = δ e^{iA} f_{5−i}.
    pub fn constrained(j: HalfInt, m: HalfInt, f: [Complex64; 4], delta: i8, a_phase: f64) -> Result<Self> {
        check_sign("delta", delta)?;
        if !a_phase.is_finite() {
            return Err(Error::Domain(format!("phase parameter must be finite, got {a_phase}")));
        }
        let c = phase(a_phase) * f64::from(delta);
        let g = [c * f[3], c * f[2], c * f[1], c * f[0]];
        Self::new(j, m, f, g)
    }

    /// Max deviation from g_i = δ e^{iA} f_{5−i}, relative to the largest
    /// amplitude of the state.
    pub fn constraint_defect(&self, delta: i8, a_phase: f64) -> Result<f64> {
        check_sign("delta", delta)?;
        let c = phase(a_phase) * f64::from(delta);
        let scale = self.max_amplitude().max(f64::MIN_POSITIVE);
        let d = (0..4)
            .map(|i| (self.g[i] - c * self.f[3 - i]).norm())
            .fold(0.0, f64::max);
        Ok(d / scale)
    }

    pub fn max_amplitude(&self) -> f64 {
        cmax4(&self.f).max(cmax4(&self.g))
    }

    /// Squared Euclidean norm of the eight radial amplitudes.
    pub fn norm_sq(&self) -> f64 {
        self.f.iter().chain(self.g.iter()).map(|z| z.norm_sqr()).sum()
    }

    /// Angular evaluation of upper-row component i at (θ, φ).
    pub fn eval_f(&self, i: usize, theta: f64, phi: f64) -> Result<Complex64> {
        if i >= 4 {
            return Err(Error::Index(format!("component index must be 0..4, got {i}")));
        }
        if self.f[i].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.f[i] * d_basis(self.j, self.m, Self::sigma_f(i), phi, theta)?)
    }

    /// Angular evaluation of lower-row component i at (θ, φ).
    pub fn eval_g(&self, i: usize, theta: f64, phi: f64) -> Result<Complex64> {
        if i >= 4 {
            return Err(Error::Index(format!("component index must be 0..4, got {i}")));
        }
        if self.g[i].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.g[i] * d_basis(self.j, self.m, Self::sigma_g(i), phi, theta)?)
    }
}

// ---------------------------------------------------------------------------
// Angular grids
// ---------------------------------------------------------------------------

/// A sample of (θ, φ) nodes used to certify pointwise operator identities.
#[derive(Debug, Clone, Serialize)]
pub struct AngularGrid {
    pub nodes: Vec<(f64, f64)>,
}

impl AngularGrid {
    /// A product grid of n_theta × n_phi nodes, pole-free and closed under
    /// the reflection (θ,φ) → (π−θ, φ+π): θ at midpoints of a uniform
    /// subdivision of (0, π), φ uniform on [0, 2π) with an even count.
    pub fn symmetric_product(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::Parameter("grid needs at least one node per direction".into()));
        }
        if n_phi % 2 != 0 {
            return Err(Error::Parameter(format!(
                "azimuthal count must be even so the half-turn φ → φ+π maps the grid onto itself, got {n_phi}"
            )));
        }
        let pi = std::f64::consts::PI;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for it in 0..n_theta {
            let theta = pi * (it as f64 + 0.5) / n_theta as f64;
            for ip in 0..n_phi {
                let phi = 2.0 * pi * ip as f64 / n_phi as f64;
                nodes.push((theta, phi));
            }
        }
        Ok(AngularGrid { nodes })
    }

    /// The reflected partner of a node — the *literal* (π−θ, φ+π), with φ
    /// not reduced modulo 2π: half-odd-j basis functions are only
    /// 2π-antiperiodic in φ, so wrapping would flip their sign.
    pub fn reflect(theta: f64, phi: f64) -> (f64, f64) {
        let pi = std::f64::consts::PI;
        (pi - theta, phi + pi)
    }

    /// Errors unless every node's reflected partner is again a grid node
    /// modulo 2π (within [`GRID_CLOSURE_TOL`]); reflection operators are
    /// only meaningful on such grids.
    pub fn require_reflection_closed(&self) -> Result<()> {
        let two_pi = 2.0 * std::f64::consts::PI;
        for &(theta, phi) in &self.nodes {
            if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
                return Err(Error::Domain(format!("node (θ, φ) = ({theta}, {phi}) outside the sphere chart")));
            }
            let (rt, rp) = Self::reflect(theta, phi);
            let found = self.nodes.iter().any(|&(t, p)| {
                let dphi = (p - rp).rem_euclid(two_pi);
                (t - rt).abs() < GRID_CLOSURE_TOL
                    && (dphi < GRID_CLOSURE_TOL || two_pi - dphi < GRID_CLOSURE_TOL)
            });
            if !found {
                return Err(Error::Domain(format!(
                    "grid is not closed under (θ,φ) → (π−θ, φ+π): no partner for ({theta}, {phi})"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bispinor constants and discrete operators
// ---------------------------------------------------------------------------

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// γ⁰ in the Weyl (spinor) basis: off-diagonal 2×2 identity blocks.
pub fn gamma0() -> Matrix4<Complex64> {
    let (z, o) = (c(0.0, 0.0), c(1.0, 0.0));
    Matrix4::new(z, z, o, z, z, z, z, o, o, z, z, z, z, o, z, z)
}

/// Spatial γ-matrices in the Weyl basis, [[0, σ^a], [−σ^a, 0]].
pub fn gamma_spatial(a: usize) -> Result<Matrix4<Complex64>> {
    let z = c(0.0, 0.0);
    let s: [[Complex64; 2]; 2] = match a {
        1 => [[z, c(1.0, 0.0)], [c(1.0, 0.0), z]],
        2 => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        3 => [[c(1.0, 0.0), z], [z, c(-1.0, 0.0)]],
        _ => return Err(Error::Index(format!("spatial index must be 1, 2 or 3, got {a}"))),
    };
    Ok(Matrix4::new(
        z, z, s[0][0], s[0][1], z, z, s[1][0], s[1][1], -s[0][0], -s[0][1], z, z, -s[1][0], -s[1][1], z, z,
    ))
}

/// The chirality grading γ⁵ = diag(1, 1, −1, −1), with the sign fixed so
/// that −γ⁵γ¹ reproduces the spherical-basis reflection matrix below.
pub fn gamma5() -> Matrix4<Complex64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)))
}

/// Bispinor factor of spatial reflection in the *spherical* tetrad: the
/// anti-diagonal matrix with entries −1 (equal to −γ⁵γ¹).  The full
/// reflection also flips the angular weight via (θ,φ) → (π−θ, φ+π).
pub fn parity_bispinor_spherical() -> Matrix4<Complex64> {
    let (z, n) = (c(0.0, 0.0), c(-1.0, 0.0));
    Matrix4::new(z, z, z, n, z, z, n, z, z, n, z, z, n, z, z, z)
}

/// Bispinor factor of spatial reflection in the *Cartesian* tetrad: iγ⁰.
pub fn parity_bispinor_cartesian() -> Matrix4<Complex64> {
    gamma0() * c(0.0, 1.0)
}

/// The isotopic reflection π̂_A = σ¹e^{iAσ³}, acting as
/// T_{±1/2} ↦ e^{±iA} T_{∓1/2}; an involution for every real A.
pub fn iso_reflection(a_phase: f64) -> Matrix2<Complex64> {
    let z = c(0.0, 0.0);
    Matrix2::new(z, phase(-a_phase), phase(a_phase), z)
}

/// The discrete operators diagonalized alongside the separated systems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "operator", rename_all = "snake_case")]
pub enum DiscreteOperator {
    /// Cartesian-tetrad bispinor reflection iγ⁰ ⊗ P̂.
    ParityBispinor,
    /// Spherical-tetrad bispinor reflection (anti-diagonal −1) ⊗ P̂.
    PiSpherical,
    /// Composite isotopic reflection π̂_A ⊗ P̂_bisp ⊗ P̂ on the doublet.
    NA { a_phase: f64 },
    /// Spherical-basis Dirac angular operator; on a separated state it acts
    /// as −ν·(reversal of the four radial slots), ν the angular root.
    KHat,
}

impl DiscreteOperator {
    /// The 4×4 bispinor factor of the operator (for K̂: the unit-ν radial
    /// action, to be scaled by the angular root of the state it meets).
    pub fn bispinor_matrix(&self) -> Matrix4<Complex64> {
        match self {
            DiscreteOperator::ParityBispinor => parity_bispinor_cartesian(),
            DiscreteOperator::PiSpherical | DiscreteOperator::NA { .. } | DiscreteOperator::KHat => {
                parity_bispinor_spherical()
            }
        }
    }

    /// The 2×2 isotopic factor (identity except for the composite
    /// reflection).
    pub fn iso_matrix(&self) -> Matrix2<Complex64> {
        match self {
            DiscreteOperator::NA { a_phase } => iso_reflection(*a_phase),
            _ => Matrix2::identity(),
        }
    }

    /// The scalar µ with (operator)² = µ·identity, for the reflection
    /// variants; the angular Dirac operator is not an involution.
    pub fn square_phase(&self) -> Result<Complex64> {
        match self {
            DiscreteOperator::KHat => Err(Error::Unsupported(
                "the angular Dirac operator squares to ν²·identity, not to a fixed phase".into(),
            )),
            _ => {
                let b = self.bispinor_matrix();
                let i = self.iso_matrix();
                let b2 = b * b;
                let i2 = i * i;
                let lead = b2[(0, 0)] * i2[(0, 0)];
                let defect = (b2 - Matrix4::identity() * b2[(0, 0)])
                    .iter()
                    .chain((i2 - Matrix2::identity() * i2[(0, 0)]).iter())
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                if defect > 1e-14 {
                    return Err(Error::Mismatch(format!(
                        "operator square deviates from a scalar by {defect:.3e}"
                    )));
                }
                Ok(lead)
            }
        }
    }
}

/// Least-squares eigen-diagnostic of a linear action: the best scalar λ
/// with (transformed) ≈ λ·(state) and the max residual relative to the
/// largest amplitude.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EigenReport {
    pub eigenvalue: Complex64,
    pub defect: f64,
}

fn eigen_report(state: &[Complex64], transformed: &[Complex64]) -> EigenReport {
    let nn: f64 = state.iter().map(|z| z.norm_sqr()).sum();
    if nn == 0.0 {
        return EigenReport { eigenvalue: Complex64::new(0.0, 0.0), defect: 0.0 };
    }
    let dot: Complex64 = state.iter().zip(transformed).map(|(a, b)| a.conj() * b).sum();
    let lambda = dot / nn;
    let scale = state.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let defect = state
        .iter()
        .zip(transformed)
        .map(|(a, b)| (b - lambda * a).norm())
        .fold(0.0, f64::max)
        / scale;
    EigenReport { eigenvalue: lambda, defect }
}

// ---------------------------------------------------------------------------
// Spatial reflection on Abelian states
// ---------------------------------------------------------------------------

/// Applies the spherical-basis spatial reflection to an Abelian separated
/// state over a reflection-closed angular grid and reports the best
/// eigenvalue fit.
///
/// For charge k = 0 with the grading f₄ = δf₁, f₃ = δf₂ the reflection is
/// exact with eigenvalue δ(−1)^{j+1} (a complex unit for half-odd j).  For
/// k ≠ 0 the reflected weights live in the opposite charge sector, so no
/// eigenvector exists and the defect stays of order one.
pub fn apply_parity_bispinor(state: &AbelianSeparatedState, grid: &AngularGrid) -> Result<EigenReport> {
    grid.require_reflection_closed()?;
    let pb = parity_bispinor_spherical();
    let mut from = Vec::with_capacity(grid.nodes.len() * 4);
    let mut to = Vec::with_capacity(grid.nodes.len() * 4);
    for &(theta, phi) in &grid.nodes {
        let (rt, rp) = AngularGrid::reflect(theta, phi);
        // Reflected column evaluated literally, then hit with the bispinor factor.
        let mut refl = [Complex64::new(0.0, 0.0); 4];
        for (i, slot) in refl.iter_mut().enumerate() {
            *slot = state.eval(i, rt, rp)?;
        }
        for i in 0..4 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (jj, r) in refl.iter().enumerate() {
                acc += pb[(i, jj)] * r;
            }
            to.push(acc);
            from.push(state.eval(i, theta, phi)?);
        }
    }
    Ok(eigen_report(&from, &to))
}

/// Certifies the cross-charge reflection identity
///
/// ```text
///   Ψ^{+k}_δ(π−θ, φ+π) = δ(−1)^{j+1} · Π_sph · Ψ^{−k}_δ(θ, φ)
/// ```
///
/// pointwise over a reflection-closed grid, where both sectors carry the
/// same radial amplitudes (their radial systems coincide).  The returned
/// defect is relative to the largest sampled amplitude.  This identity is
/// the verifiable remnant of reflection symmetry for a monopole sector:
/// the operator connects ±k and therefore has no adjoint action within
/// one charge.
pub fn two_sector_correlation_defect(
    state: &AbelianSeparatedState,
    delta: i8,
    grid: &AngularGrid,
) -> Result<f64> {
    check_sign("delta", delta)?;
    if state.constraint_defect(delta)? > 1e-12 {
        return Err(Error::Parameter(
            "state must carry the grading f₄ = δf₁, f₃ = δf₂ before the cross-sector identity applies".into(),
        ));
    }
    grid.require_reflection_closed()?;
    let partner = state.charge_reflected();
    let pb = parity_bispinor_spherical();
    let lam = parity_phase(state.j + HalfInt::ONE) * f64::from(delta);
    let mut defect = 0.0f64;
    let mut scale = 0.0f64;
    for &(theta, phi) in &grid.nodes {
        let (rt, rp) = AngularGrid::reflect(theta, phi);
        for i in 0..4 {
            let lhs = state.eval(i, rt, rp)?;
            let mut rhs = Complex64::new(0.0, 0.0);
            for jj in 0..4 {
                rhs += pb[(i, jj)] * partner.eval(jj, theta, phi)?;
            }
            defect = defect.max((lhs - lam * rhs).norm());
            scale = scale.max(lhs.norm());
        }
    }
    Ok(defect / scale.max(f64::MIN_POSITIVE))
}

// ---------------------------------------------------------------------------
// The composite isotopic reflection on doublet states
// ---------------------------------------------------------------------------

/// Applies N̂_A = π̂_A ⊗ P̂_bisp ⊗ P̂ to a separated doublet state.
///
/// The action is exact on the separation template: the reflection reverses
/// each four-block and flips the weight pattern onto the opposite isotopic
/// row, so
///
/// ```text
///   f'_i = (−1)^{j+1} e^{−iA} g_{5−i},      g'_i = (−1)^{j+1} e^{+iA} f_{5−i}.
/// ```
///
/// Returns the transformed state and the least-squares eigen-defect of the
/// pair (state, transformed); the defect vanishes exactly on the
/// constrained family g_i = δe^{iA}f_{5−i}, where the eigenvalue is
/// δ(−1)^{j+1}, and is of order one on a generic state.
pub fn apply_n_a(a_phase: f64, state: &SeparatedDoubletState) -> Result<(SeparatedDoubletState, f64)> {
    if !a_phase.is_finite() {
        return Err(Error::Domain(format!("phase parameter must be finite, got {a_phase}")));
    }
    if state.iso_frame != IsoGaugeFrame::SchwingerIso || state.tetrad_frame != TetradFrame::Spherical {
        return Err(Error::Unsupported(
            "the composite reflection is tabulated in the Schwinger isotopic frame and spherical tetrad; \
             rotate the state there first"
                .into(),
        ));
    }
    let sign = -state.j.parity_sign(); // (−1)^{j+1} for integer j
    let fwd = phase(-a_phase) * sign;
    let bwd = phase(a_phase) * sign;
    let f = [fwd * state.g[3], fwd * state.g[2], fwd * state.g[1], fwd * state.g[0]];
    let g = [bwd * state.f[3], bwd * state.f[2], bwd * state.f[1], bwd * state.f[0]];
    let transformed = SeparatedDoubletState::new(state.j, state.m, f, g)?;
    let before: Vec<Complex64> = state.f.iter().chain(state.g.iter()).copied().collect();
    let after: Vec<Complex64> = transformed.f.iter().chain(transformed.g.iter()).copied().collect();
    Ok((transformed, eigen_report(&before, &after).defect))
}

/// Verifies the algebraic form of [`apply_n_a`] against the literal
/// operator composition on an angular grid: evaluate the eight component
/// functions at the reflected angles, apply the bispinor reflection matrix
/// and the isotopic reflection, and compare with the transformed state
/// evaluated at the original angles.  Returns the max pointwise defect
/// relative to the largest sampled amplitude.
pub fn n_a_pointwise_defect(a_phase: f64, state: &SeparatedDoubletState, grid: &AngularGrid) -> Result<f64> {
    grid.require_reflection_closed()?;
    let (transformed, _) = apply_n_a(a_phase, state)?;
    let pb = parity_bispinor_spherical();
    let iso = iso_reflection(a_phase);
    let mut defect = 0.0f64;
    let mut scale = 0.0f64;
    for &(theta, phi) in &grid.nodes {
        let (rt, rp) = AngularGrid::reflect(theta, phi);
        // Column of eight: reflected evaluation of (upper row; lower row).
        let (refl_f, refl_g) = {
            let mut rf = [Complex64::new(0.0, 0.0); 4];
            let mut rg = [Complex64::new(0.0, 0.0); 4];
            for (i, (up, low)) in rf.iter_mut().zip(rg.iter_mut()).enumerate() {
                *up = state.eval_f(i, rt, rp)?;
                *low = state.eval_g(i, rt, rp)?;
            }
            (rf, rg)
        };
        let refl = [refl_f, refl_g];
        // Bispinor reflection within each isotopic row.
        let mut brows = [[Complex64::new(0.0, 0.0); 4]; 2];
        for (brow, refl_row) in brows.iter_mut().zip(refl.iter()) {
            for (i, slot) in brow.iter_mut().enumerate() {
                for (jj, r) in refl_row.iter().enumerate() {
                    *slot += pb[(i, jj)] * r;
                }
            }
        }
        for (i, (b0, b1)) in brows[0].iter().zip(brows[1].iter()).enumerate() {
            // Isotopic mixing of the two rows.
            let upper = iso[(0, 0)] * b0 + iso[(0, 1)] * b1;
            let lower = iso[(1, 0)] * b0 + iso[(1, 1)] * b1;
            let tu = transformed.eval_f(i, theta, phi)?;
            let tl = transformed.eval_g(i, theta, phi)?;
            defect = defect.max((upper - tu).norm()).max((lower - tl).norm());
            scale = scale.max(tu.norm()).max(tl.norm());
        }
    }
    Ok(defect / scale.max(f64::MIN_POSITIVE))
}

// ---------------------------------------------------------------------------
// Angular Dirac operators
// ---------------------------------------------------------------------------

/// Closed-form eigenvalue −δ·√((j+1/2)² − k²) of the Abelian angular Dirac
/// operator on the grading-δ states; purely arithmetic, no admissibility
/// filter beyond a real root.
pub fn k_hat_eigenvalue_abelian(j: HalfInt, k: HalfInt, delta: i8) -> Result<f64> {
    check_sign("delta", delta)?;
    if j.is_negative() {
        return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
    }
    let jf = j.to_f64();
    let kf = k.to_f64();
    if kf.abs() > jf + 0.5 {
        return Err(Error::Domain(format!(
            "angular root is imaginary for |k| > j + 1/2 (j = {j}, k = {k})"
        )));
    }
    Ok(-f64::from(delta) * nu_factor(j, k))
}

/// Closed-form eigenvalue −µ·√(j(j+1)) of the doublet angular Dirac
/// operator on the µ-graded states.
pub fn k_hat_eigenvalue_doublet(j: HalfInt, mu: i8) -> Result<f64> {
    check_sign("mu", mu)?;
    let ji = j
        .as_integer()
        .ok_or_else(|| Error::Index(format!("doublet states carry integer j, got j = {j}")))?;
    if ji < 0 {
        return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
    }
    let jf = j.to_f64();
    Ok(-f64::from(mu) * (jf * (jf + 1.0)).sqrt())
}

/// Applies the Abelian angular Dirac operator to a separated state:
/// (f₁, f₂, f₃, f₄) ↦ −ν·(f₄, f₃, f₂, f₁) with ν = √((j+1/2)² − k²).
///
/// On grading-δ states this is the eigenvalue −δν; at the minimal j of a
/// charge ladder ν vanishes identically and the operator annihilates the
/// state.
pub fn apply_k_hat_abelian(state: &AbelianSeparatedState) -> Result<(AbelianSeparatedState, EigenReport)> {
    let nu = nu_factor(state.j, state.k);
    let f = [
        state.f[3] * -nu,
        state.f[2] * -nu,
        state.f[1] * -nu,
        state.f[0] * -nu,
    ];
    let transformed = AbelianSeparatedState::new(state.j, state.m, state.k, f)?;
    let report = eigen_report(&state.f, &transformed.f);
    Ok((transformed, report))
}

/// Applies the doublet angular Dirac operator, reversing each isotopic
/// row with the factor −√(j(j+1)).  Defined only over backgrounds with
/// W ≡ 0; a nonzero W-profile couples the rows and the operator is no
/// longer conserved.
pub fn apply_k_hat_doublet(
    state: &SeparatedDoubletState,
    w_profile: &WProfile,
) -> Result<(SeparatedDoubletState, EigenReport)> {
    if !w_profile.is_zero() {
        return Err(Error::Unsupported(
            "the angular Dirac operator is conserved only on W ≡ 0 backgrounds; \
             the W-coupling mixes the isotopic rows"
                .into(),
        ));
    }
    let jf = state.j.to_f64();
    let nu = (jf * (jf + 1.0)).sqrt();
    let f = [
        state.f[3] * -nu,
        state.f[2] * -nu,
        state.f[1] * -nu,
        state.f[0] * -nu,
    ];
    let g = [
        state.g[3] * -nu,
        state.g[2] * -nu,
        state.g[1] * -nu,
        state.g[0] * -nu,
    ];
    let transformed = SeparatedDoubletState::new(state.j, state.m, f, g)?;
    let before: Vec<Complex64> = state.f.iter().chain(state.g.iter()).copied().collect();
    let after: Vec<Complex64> = transformed.f.iter().chain(transformed.g.iter()).copied().collect();
    Ok((transformed, eigen_report(&before, &after)))
}

/// Grid-function commutator defect ‖[H, K̂]‖ of the angular Dirac operator
/// against the coupling-free doublet radial Hamiltonian
///
/// ```text
///   (Hf)₁ = −i f₁′ − (ν/sinχ) f₂ + m f₃,     (Hf)₂ = +i f₂′ + (ν/sinχ) f₁ + m f₄,
///   (Hf)₃ = +i f₃′ + (ν/sinχ) f₄ + m f₁,     (Hf)₄ = −i f₄′ − (ν/sinχ) f₃ + m f₂,
/// ```
///
/// with ν = √(j(j+1)) and the derivative realized by a five-point stencil
/// on a uniform χ-grid.  Both operator orders are applied to seeded smooth
/// four-tuples; the defect is measured on interior nodes, relative to the
/// largest value of ‖HK̂f‖.
pub fn k_hat_commutator_defect(j: HalfInt, mass: f64, n: usize) -> Result<f64> {
    let ji = j
        .as_integer()
        .ok_or_else(|| Error::Index(format!("doublet states carry integer j, got j = {j}")))?;
    if ji < 0 {
        return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
    }
    if !mass.is_finite() {
        return Err(Error::Domain(format!("mass must be finite, got {mass}")));
    }
    if n < 9 {
        return Err(Error::Parameter(format!("need at least 9 grid nodes for the five-point stencil, got {n}")));
    }
    let jf = j.to_f64();
    let nu = (jf * (jf + 1.0)).sqrt();
    let (lo, hi) = (0.3, std::f64::consts::PI - 0.3);
    let h = (hi - lo) / (n - 1) as f64;
    let chi: Vec<f64> = (0..n).map(|i| lo + h * i as f64).collect();

    // Smooth deterministic test tuples: low trigonometric combinations.
    let tuples: Vec<Vec<[Complex64; 4]>> = (0..3)
        .map(|t| {
            chi.iter()
                .map(|&x| {
                    let mut out = [Complex64::new(0.0, 0.0); 4];
                    for (i, slot) in out.iter_mut().enumerate() {
                        let a = (1.0 + 0.3 * t as f64 + 0.2 * i as f64) * x;
                        let b = (0.7 + 0.11 * (t + i) as f64) * x;
                        *slot = Complex64::new(a.sin() + 0.4 * b.cos(), 0.5 * a.cos() - 0.3 * b.sin());
                    }
                    out
                })
                .collect()
        })
        .collect();

    let deriv = |field: &[Vec<Complex64>], comp: usize, i: usize| -> Complex64 {
        let v = &field[comp];
        (v[i - 2] - v[i + 2] + (v[i + 1] - v[i - 1]) * 8.0) / (12.0 * h)
    };
    let apply_h = |nodes: &[[Complex64; 4]]| -> Vec<[Complex64; 4]> {
        let comps: Vec<Vec<Complex64>> =
            (0..4).map(|cidx| nodes.iter().map(|row| row[cidx]).collect()).collect();
        let im = Complex64::new(0.0, 1.0);
        (0..n)
            .map(|i| {
                if i < 2 || i >= n - 2 {
                    return [Complex64::new(0.0, 0.0); 4];
                }
                let w = nu / chi[i].sin();
                let d: Vec<Complex64> = (0..4).map(|cidx| deriv(&comps, cidx, i)).collect();
                let f = &nodes[i];
                [
                    -im * d[0] - w * f[1] + mass * f[2],
                    im * d[1] + w * f[0] + mass * f[3],
                    im * d[2] + w * f[3] + mass * f[0],
                    -im * d[3] - w * f[2] + mass * f[1],
                ]
            })
            .collect()
    };
    let apply_k = |nodes: &[[Complex64; 4]]| -> Vec<[Complex64; 4]> {
        nodes
            .iter()
            .map(|f| [f[3] * -nu, f[2] * -nu, f[1] * -nu, f[0] * -nu])
            .collect()
    };

    let mut defect = 0.0f64;
    let mut scale = 0.0f64;
    for tuple in &tuples {
        let hk = apply_h(&apply_k(tuple));
        let kh = apply_k(&apply_h(tuple));
        for i in 2..n - 2 {
            for cidx in 0..4 {
                defect = defect.max((hk[i][cidx] - kh[i][cidx]).norm());
                scale = scale.max(hk[i][cidx].norm());
            }
        }
    }
    Ok(defect / scale.max(f64::MIN_POSITIVE))
}

// ---------------------------------------------------------------------------
// Over-determined system behind the composite reflection
// ---------------------------------------------------------------------------

/// Residual of the compatibility conditions for diagonalizing the
/// composite reflection on an interacting background.
///
/// `chi`/`f` sample a solution of the doublet four-system; `f_tilde` and
/// `phi_tilde` sample the Coulomb-type and scalar-coupling background
/// terms on the same nodes.  The defect is the max over nodes of the four
/// paired-equation differences
///
/// ```text
///   F̃f₃ − Φ̃f₁,   F̃f₄ − (Φ̃ + δ sinA · W/sinχ) f₂,
///   F̃f₁ − Φ̃f₃,   F̃f₂ − (Φ̃ + δ sinA · W/sinχ) f₄,
/// ```
///
/// which vanish exactly when F̃ = Φ̃ = 0 and (for W ≢ 0) sin A = 0.
pub fn overdetermined_defect(
    chi: &[f64],
    f: &[[Complex64; 4]],
    f_tilde: &[f64],
    phi_tilde: &[f64],
    w_profile: &WProfile,
    delta: i8,
    a_phase: f64,
) -> Result<f64> {
    check_sign("delta", delta)?;
    if !a_phase.is_finite() {
        return Err(Error::Domain(format!("phase parameter must be finite, got {a_phase}")));
    }
    if chi.is_empty() || chi.len() != f.len() || chi.len() != f_tilde.len() || chi.len() != phi_tilde.len() {
        return Err(Error::Mismatch(format!(
            "sample arrays must share one nonzero length, got {} / {} / {} / {}",
            chi.len(),
            f.len(),
            f_tilde.len(),
            phi_tilde.len()
        )));
    }
    let sin_a = a_phase.sin();
    let d = f64::from(delta);
    let mut defect = 0.0f64;
    for (i, &x) in chi.iter().enumerate() {
        if !(x > 0.0 && x < std::f64::consts::PI) {
            return Err(Error::Domain(format!("arc coordinate must lie in (0, π), got {x}")));
        }
        let warp = x / x.sin();
        let w_over_sin = w_profile.w(x, warp)? / x.sin();
        let ft = f_tilde[i];
        let pt = phi_tilde[i];
        let row = &f[i];
        let twist = pt + d * sin_a * w_over_sin;
        let d1 = (ft * row[2] - pt * row[0]).norm();
        let d2 = (ft * row[3] - twist * row[1]).norm();
        let d3 = (ft * row[0] - pt * row[2]).norm();
        let d4 = (ft * row[1] - twist * row[3]).norm();
        defect = defect.max(d1).max(d2).max(d3).max(d4);
    }
    Ok(defect)
}

// ---------------------------------------------------------------------------
// Reflection selection rules
// ---------------------------------------------------------------------------

/// Outcome of the reflection selection rule for a matrix element between
/// grading-(δ, δ′) states of total momenta (J, J′).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SelectionOutcome {
    /// The reflection forces the matrix element to vanish identically.
    ForcedZero,
    /// The full-sphere integral reduces to `factor` times the half-sphere
    /// integral (the factor is 2 whenever the element survives).
    Unconstrained { factor: f64 },
}

/// The reflection selection rule: a probe of reflection signature Ω
/// between doublet states of gradings δ, δ′ and momenta J, J′ carries the
/// factor 1 + Ω·δ·δ′·(−1)^{J+J′}; the matrix element is forced to zero
/// exactly when that factor vanishes.
pub fn selection_rule(omega: i8, delta: i8, delta_prime: i8, j: HalfInt, j_prime: HalfInt) -> Result<SelectionOutcome> {
    check_sign("omega", omega)?;
    check_sign("delta", delta)?;
    check_sign("delta_prime", delta_prime)?;
    if j.is_negative() || j_prime.is_negative() {
        return Err(Error::Index(format!("momenta must be nonnegative, got J = {j}, J' = {j_prime}")));
    }
    let total = j + j_prime;
    if !total.is_integer() {
        return Err(Error::Index(format!(
            "the reflection phase (−1)^(J+J') needs J + J' ∈ ℤ, got J = {j}, J' = {j_prime}"
        )));
    }
    let factor = 1.0 + f64::from(omega) * f64::from(delta) * f64::from(delta_prime) * total.parity_sign();
    if factor == 0.0 {
        Ok(SelectionOutcome::ForcedZero)
    } else {
        Ok(SelectionOutcome::Unconstrained { factor })
    }
}

// ---------------------------------------------------------------------------
// The A-family as an isotopic gauge move
// ---------------------------------------------------------------------------

/// The isotopic transformation connecting the A-family of composite
/// reflections to its A = 0 member, in a given isotopic frame:
///
/// ```text
///   Schwinger:  U_A = diag(1, e^{iA}),
///   Cartesian:  U_A = e^{iA/2} exp(−i(A/2) σ·n̂),   n̂ = n̂(θ,φ),
/// ```
///
/// the Cartesian form being the spinor transport of the Schwinger one by
/// the frame rotation.  θ and φ are ignored in the Schwinger frame.
pub fn u_a_matrix(frame: IsoGaugeFrame, a_phase: f64, theta: f64, phi: f64) -> Result<Matrix2<Complex64>> {
    if !a_phase.is_finite() || !theta.is_finite() || !phi.is_finite() {
        return Err(Error::Domain("phase parameter and angles must be finite".into()));
    }
    match frame {
        IsoGaugeFrame::SchwingerIso => {
            Ok(Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), phase(a_phase)))
        }
        IsoGaugeFrame::CartesianIso => {
            let (st, ct) = theta.sin_cos();
            let ndot = Matrix2::new(
                c(ct, 0.0),
                phase(-phi) * st,
                phase(phi) * st,
                c(-ct, 0.0),
            );
            let half = 0.5 * a_phase;
            let rot = Matrix2::identity() * c(half.cos(), 0.0) - ndot * c(0.0, half.sin());
            Ok(rot * phase(half))
        }
        IsoGaugeFrame::DiracIso => Err(Error::Unsupported(
            "the reflection family is tabulated in the Schwinger and Cartesian isotopic frames only".into(),
        )),
    }
}

/// Defect of the transport identity U^Cart_A = S · U^Schw_A · S† with S the
/// SU(2) image of the Schwinger → Cartesian isotopic frame rotation,
/// after aligning an overall phase (the spinor lift of the frame rotation
/// is fixed only up to sign).
pub fn u_a_transport_defect(a_phase: f64, theta: f64, phi: f64) -> Result<f64> {
    let s = spinor_from_gibbs(&iso_transition_gibbs(
        IsoGaugeFrame::SchwingerIso,
        IsoGaugeFrame::CartesianIso,
        theta,
        phi,
    )?);
    let schw = u_a_matrix(IsoGaugeFrame::SchwingerIso, a_phase, theta, phi)?;
    let cart = u_a_matrix(IsoGaugeFrame::CartesianIso, a_phase, theta, phi)?;
    let transported = s * schw * s.adjoint();
    // Align the global phase on the entry of largest magnitude.
    let mut best = (0.0, Complex64::new(1.0, 0.0));
    for idx in 0..4 {
        let (r, cc) = (idx / 2, idx % 2);
        let mag = cart[(r, cc)].norm();
        if mag > best.0 {
            best = (mag, transported[(r, cc)] / cart[(r, cc)]);
        }
    }
    let align = best.1 / best.1.norm();
    let mut defect = 0.0f64;
    for r in 0..2 {
        for cc in 0..2 {
            defect = defect.max((transported[(r, cc)] - cart[(r, cc)] * align).norm());
        }
    }
    Ok(defect)
}

/// Conjugation defect ‖π̂_A − U_A π̂₀ U_A^{−1}‖ in the Schwinger frame: the
/// whole reflection family is one operator seen through the isotopic
/// gauge moves U_A.
pub fn n_a_conjugation_defect(a_phase: f64) -> Result<f64> {
    if !a_phase.is_finite() {
        return Err(Error::Domain(format!("phase parameter must be finite, got {a_phase}")));
    }
    let u = u_a_matrix(IsoGaugeFrame::SchwingerIso, a_phase, 0.0, 0.0)?;
    let conj = u * iso_reflection(0.0) * u.adjoint();
    let target = iso_reflection(a_phase);
    let mut defect = 0.0f64;
    for r in 0..2 {
        for cc in 0..2 {
            defect = defect.max((conj[(r, cc)] - target[(r, cc)]).norm());
        }
    }
    Ok(defect)
}

// ---------------------------------------------------------------------------
// Fixed-background operator set: H, t₃ and the composite reflection
// ---------------------------------------------------------------------------

/// Matrix defects of the three commutators ([H, t₃], [H, N̂_A], [t₃, N̂_A])
/// on a truncated basis (uniform χ-grid ⊗ eight components) over the
/// coupling-free background W ≡ 0.
///
/// The Hamiltonian commutes with both the isotopic charge t₃ and every
/// composite reflection N̂_A, but t₃ and N̂_A do not commute with each
/// other — the two conserved sets label *different* bases of the same
/// spectrum.  Defects are relative to the largest entry of the products.
pub fn background_commutator_defects(j: HalfInt, mass: f64, a_phase: f64, n: usize) -> Result<[f64; 3]> {
    let ji = j
        .as_integer()
        .ok_or_else(|| Error::Index(format!("doublet states carry integer j, got j = {j}")))?;
    if ji < 0 {
        return Err(Error::Index(format!("j must be nonnegative, got j = {j}")));
    }
    if !mass.is_finite() || !a_phase.is_finite() {
        return Err(Error::Domain("mass and phase parameter must be finite".into()));
    }
    if n < 5 {
        return Err(Error::Parameter(format!("need at least 5 grid nodes, got {n}")));
    }
    let jf = j.to_f64();
    let nu = (jf * (jf + 1.0)).sqrt();
    let (lo, hi) = (0.3, std::f64::consts::PI - 0.3);
    let h = (hi - lo) / (n - 1) as f64;
    let dim = 8 * n;
    let idx = |row: usize, comp: usize, node: usize| (row * 4 + comp) * n + node;

    // Five-point first-derivative stencil (interior; one-sided at edges).
    let mut dmat = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let coeffs: [(i64, f64); 5] = if i >= 2 && i + 2 < n {
            [(-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (0, 0.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0)]
        } else if i < 2 {
            [(0, -25.0 / 12.0), (1, 48.0 / 12.0), (2, -36.0 / 12.0), (3, 16.0 / 12.0), (4, -3.0 / 12.0)]
        } else {
            [(0, 25.0 / 12.0), (-1, -48.0 / 12.0), (-2, 36.0 / 12.0), (-3, -16.0 / 12.0), (-4, 3.0 / 12.0)]
        };
        for (off, cf) in coeffs {
            if cf != 0.0 {
                let col = (i as i64 + off) as usize;
                dmat[(i, col)] += c(cf / h, 0.0);
            }
        }
    }

    let mut hmat = DMatrix::<Complex64>::zeros(dim, dim);
    let im = Complex64::new(0.0, 1.0);
    // Same four-component block on each isotopic row: the derivative part
    // with signs (−, +, +, −), the angular part ν/sinχ with the (1↔2, 3↔4)
    // mixing, and the mass part with the (1↔3, 2↔4) mixing.
    for row in 0..2 {
        for node_r in 0..n {
            let x = lo + h * node_r as f64;
            let w = nu / x.sin();
            for node_c in 0..n {
                let dv = dmat[(node_r, node_c)];
                if dv != c(0.0, 0.0) {
                    hmat[(idx(row, 0, node_r), idx(row, 0, node_c))] += -im * dv;
                    hmat[(idx(row, 1, node_r), idx(row, 1, node_c))] += im * dv;
                    hmat[(idx(row, 2, node_r), idx(row, 2, node_c))] += im * dv;
                    hmat[(idx(row, 3, node_r), idx(row, 3, node_c))] += -im * dv;
                }
            }
            hmat[(idx(row, 0, node_r), idx(row, 1, node_r))] += c(-w, 0.0);
            hmat[(idx(row, 1, node_r), idx(row, 0, node_r))] += c(w, 0.0);
            hmat[(idx(row, 2, node_r), idx(row, 3, node_r))] += c(w, 0.0);
            hmat[(idx(row, 3, node_r), idx(row, 2, node_r))] += c(-w, 0.0);
            hmat[(idx(row, 0, node_r), idx(row, 2, node_r))] += c(mass, 0.0);
            hmat[(idx(row, 1, node_r), idx(row, 3, node_r))] += c(mass, 0.0);
            hmat[(idx(row, 2, node_r), idx(row, 0, node_r))] += c(mass, 0.0);
            hmat[(idx(row, 3, node_r), idx(row, 1, node_r))] += c(mass, 0.0);
        }
    }

    let mut tmat = DMatrix::<Complex64>::zeros(dim, dim);
    for comp in 0..4 {
        for node in 0..n {
            tmat[(idx(0, comp, node), idx(0, comp, node))] = c(0.5, 0.0);
            tmat[(idx(1, comp, node), idx(1, comp, node))] = c(-0.5, 0.0);
        }
    }

    let sign = -j.parity_sign(); // (−1)^{j+1}
    let mut nmat = DMatrix::<Complex64>::zeros(dim, dim);
    for comp in 0..4 {
        for node in 0..n {
            nmat[(idx(0, comp, node), idx(1, 3 - comp, node))] = phase(-a_phase) * sign;
            nmat[(idx(1, comp, node), idx(0, 3 - comp, node))] = phase(a_phase) * sign;
        }
    }

    let rel = |a: &DMatrix<Complex64>, b: &DMatrix<Complex64>| -> f64 {
        let ab = a * b;
        let ba = b * a;
        let scale = mat_max(&ab).max(mat_max(&ba)).max(f64::MIN_POSITIVE);
        mat_max(&(ab - ba)) / scale
    };
    Ok([rel(&hmat, &tmat), rel(&hmat, &nmat), rel(&tmat, &nmat)])
}

// ---------------------------------------------------------------------------
// SU(2) realizations in the D-function basis
// ---------------------------------------------------------------------------

/// Chart of the two-patch string gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WuYangChart {
    North,
    South,
}

/// The five concrete total-moment realizations checked against the SU(2)
/// commutation relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "realization", rename_all = "snake_case")]
pub enum JRealization {
    /// Scalar realization with weight term λ/sinθ; basis D^j_{−m,−λ}.
    PauliLambda { lambda: HalfInt },
    /// Abelian bispinor realization of charge k in the Schwinger gauge:
    /// weight sectors σ = k ∓ 1/2.
    AbelianK { k: HalfInt },
    /// Isotopic doublet in the Schwinger frame: weight sectors −1, 0, +1.
    DoubletSchwinger,
    /// Charge-k realization in the string gauge regular on the north
    /// axis; the conserved J₃ is l₃ − k.
    DiracGauge { k: HalfInt },
    /// Charge-k realization on one chart of the two-patch gauge;
    /// J₃ = l₃ − k (north) or l₃ + k (south).
    WuYang { k: HalfInt, chart: WuYangChart },
}

impl JRealization {
    /// Weight sectors σ of the realization (slots of the separated
    /// templates).
    fn sectors(&self) -> Vec<HalfInt> {
        match self {
            JRealization::PauliLambda { lambda } => vec![-*lambda],
            JRealization::AbelianK { k }
            | JRealization::DiracGauge { k }
            | JRealization::WuYang { k, .. } => {
                vec![*k - HalfInt::HALF, *k + HalfInt::HALF]
            }
            JRealization::DoubletSchwinger => {
                vec![HalfInt::from_int(-1), HalfInt::ZERO, HalfInt::ONE]
            }
        }
    }

    /// φ-winding offset w of the basis functions e^{i(m+w)φ} d^j_{−m,σ}(θ);
    /// equal to the cosθ-tilt of the weight term, and to l₃ − J₃.
    pub fn winding_shift(&self) -> f64 {
        match self {
            JRealization::PauliLambda { .. }
            | JRealization::AbelianK { .. }
            | JRealization::DoubletSchwinger => 0.0,
            JRealization::DiracGauge { k } => k.to_f64(),
            JRealization::WuYang { k, chart } => match chart {
                WuYangChart::North => k.to_f64(),
                WuYangChart::South => -k.to_f64(),
            },
        }
    }

    /// The equivalent U(1) frame bookkeeping entry, where one exists.
    pub fn u1_kind(&self) -> Option<AbelianGaugeKind> {
        match self {
            JRealization::AbelianK { .. } => Some(AbelianGaugeKind::SchwingerU1),
            JRealization::DiracGauge { .. } => Some(AbelianGaugeKind::DiracU1),
            JRealization::WuYang { chart: WuYangChart::North, .. } => Some(AbelianGaugeKind::WuYangN),
            JRealization::WuYang { chart: WuYangChart::South, .. } => Some(AbelianGaugeKind::WuYangS),
            _ => None,
        }
    }

    /// Smallest admissible j of the realization's ladder.
    fn j_start(&self) -> HalfInt {
        match self {
            JRealization::PauliLambda { lambda } => lambda.abs(),
            JRealization::DoubletSchwinger => HalfInt::ZERO,
            JRealization::AbelianK { k }
            | JRealization::DiracGauge { k }
            | JRealization::WuYang { k, .. } => {
                if *k == HalfInt::ZERO {
                    HalfInt::HALF
                } else {
                    k.abs() - HalfInt::HALF
                }
            }
        }
    }

    /// θ-samples honouring the chart of the realization (the string-gauge
    /// patches do not reach the opposite pole).
    fn theta_samples(&self) -> Vec<f64> {
        match self {
            JRealization::WuYang { chart: WuYangChart::North, .. } => {
                (0..9).map(|i| 0.20 + 0.17 * i as f64).collect()
            }
            JRealization::WuYang { chart: WuYangChart::South, .. } => {
                (0..9).map(|i| std::f64::consts::PI - 0.20 - 0.17 * i as f64).collect()
            }
            _ => (0..9).map(|i| 0.30 + 0.31 * i as f64).collect(),
        }
    }

    fn name(&self) -> String {
        match self {
            JRealization::PauliLambda { lambda } => format!("pauli_lambda({lambda})"),
            JRealization::AbelianK { k } => format!("abelian_k({k})"),
            JRealization::DoubletSchwinger => "doublet_schwinger".into(),
            JRealization::DiracGauge { k } => format!("dirac_gauge({k})"),
            JRealization::WuYang { k, chart } => format!(
                "wu_yang({k}, {})",
                match chart {
                    WuYangChart::North => "north",
                    WuYangChart::South => "south",
                }
            ),
        }
    }
}

/// Certificate of one realization against the Lie-algebra relations.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub realization: String,
    pub j_max: HalfInt,
    pub sectors_checked: usize,
    /// max‖[J_a, J_b] − i ε_{abc} J_c‖ over all sectors and admissible j.
    pub commutator_defect: f64,
    /// How well the ladder action of the differential operators closes on
    /// the neighbouring d-functions across the θ-samples.
    pub closure_defect: f64,
    /// max‖J² − j(j+1)·identity‖.
    pub casimir_defect: f64,
    /// l₃ − J₃ on the basis (the string-gauge spectra shift ±k).
    pub winding_shift: f64,
}

/// Ladder data for one (j, σ) sector: the matrices J₊, J₋ in the
/// (2j+1)-dimensional m-basis, extracted from the differential action, and
/// the closure defect of that extraction.
fn sector_ladder(
    j: HalfInt,
    sigma: HalfInt,
    shift: f64,
    thetas: &[f64],
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>, f64)> {
    let dim = (j.doubled() + 1) as usize;
    let mut jp = DMatrix::<Complex64>::zeros(dim, dim);
    let mut jm = DMatrix::<Complex64>::zeros(dim, dim);
    let mut closure = 0.0f64;
    let pos = |m: HalfInt| ((m + j).doubled() / 2) as usize;

    let mut m2 = -j.doubled();
    while m2 <= j.doubled() {
        let m = HalfInt::from_doubled(m2);
        let big_m = m.to_f64() + shift;
        // Bracket of the raising (up = +) and lowering (up = −) action on
        // e^{i(m+w)φ} d^j_{−m,σ}: ±∂_θ d + (−M cosθ + τ(θ)) d / sinθ with
        // τ(θ) = −σ + w·cosθ; the winding and tilt cancel pointwise, which
        // is exactly what makes every gauge share one ladder.
        let bracket = |up: bool, theta: f64| -> Result<f64> {
            let d = d_small(j, -m, sigma, theta)?;
            let dp = d_small_deriv(j, -m, sigma, theta)?;
            let tau = -sigma.to_f64() + shift * theta.cos();
            let coeff = (-big_m * theta.cos() + tau) / theta.sin();
            Ok(if up { dp } else { -dp } + coeff * d)
        };
        for (up, target_m) in [(true, m + HalfInt::ONE), (false, m - HalfInt::ONE)] {
            let brackets: Vec<f64> = thetas.iter().map(|&t| bracket(up, t)).collect::<Result<_>>()?;
            if weight_ok(j, target_m) {
                let dens: Vec<f64> = thetas
                    .iter()
                    .map(|&t| d_small(j, -target_m, sigma, t))
                    .collect::<Result<_>>()?;
                let (ibest, dbest) = dens
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                    .expect("nonempty sample set");
                if dbest.abs() < 1e-6 {
                    return Err(Error::Parameter(format!(
                        "ladder target d^{j}_{{{},{}}} too small on the sample set",
                        -target_m, sigma
                    )));
                }
                let coeff = brackets[ibest] / dbest;
                for (b, den) in brackets.iter().zip(&dens) {
                    closure = closure.max((b - coeff * den).abs());
                }
                let mat = if up { &mut jp } else { &mut jm };
                mat[(pos(target_m), pos(m))] = c(coeff, 0.0);
            } else {
                // No target state: the ladder must annihilate this member.
                for b in &brackets {
                    closure = closure.max(b.abs());
                }
            }
        }
        m2 += 2;
    }
    Ok((jp, jm, closure))
}

/// Represents the realization's J₁, J₂, J₃ as matrices in the D-function
/// basis for every admissible j ≤ j_max (extracting ladder coefficients
/// from the differential action) and reports the worst commutator,
/// closure and Casimir defects.
pub fn su2_algebra_defect(realization: JRealization, j_max: HalfInt) -> Result<AlgebraReport> {
    if j_max.is_negative() || j_max.doubled() > 12 {
        return Err(Error::Domain(format!(
            "j_max must lie in [0, 6]; the d-function sampling is tuned for that range, got {j_max}"
        )));
    }
    if let JRealization::PauliLambda { lambda } = realization {
        if lambda.doubled().abs() > 12 {
            return Err(Error::Domain(format!("|λ| must not exceed 6, got {lambda}")));
        }
    }
    let start = realization.j_start();
    if start > j_max {
        return Err(Error::Index(format!(
            "no admissible j ≤ {j_max}: the ladder of {} starts at {start}",
            realization.name()
        )));
    }
    let shift = realization.winding_shift();
    let thetas = realization.theta_samples();
    let im = Complex64::new(0.0, 1.0);
    let half = c(0.5, 0.0);

    let mut commutator = 0.0f64;
    let mut closure = 0.0f64;
    let mut casimir = 0.0f64;
    let mut sectors_checked = 0usize;

    let mut j2 = start.doubled();
    while j2 <= j_max.doubled() {
        let j = HalfInt::from_doubled(j2);
        let dim = (j2 + 1) as usize;
        let j3 = DMatrix::<Complex64>::from_fn(dim, dim, |r, cc| {
            if r == cc {
                c(-j.to_f64() + r as f64, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        for sigma in realization.sectors() {
            if !weight_ok(j, sigma) {
                continue;
            }
            sectors_checked += 1;
            let (jp, jm, cl) = sector_ladder(j, sigma, shift, &thetas)?;
            closure = closure.max(cl);
            let j1 = (&jp + &jm) * half;
            let j2m = (&jp - &jm) * (half / im);
            let pairs = [
                (&j1, &j2m, &j3),
                (&j2m, &j3, &j1),
                (&j3, &j1, &j2m),
            ];
            for (a, b, target) in pairs {
                let comm = a * b - b * a;
                commutator = commutator.max(mat_max(&(comm - target.map(|z| z * im))));
            }
            let cas = &j1 * &j1 + &j2m * &j2m + &j3 * &j3;
            let want = j.to_f64() * (j.to_f64() + 1.0);
            casimir = casimir.max(mat_max(&(cas - DMatrix::identity(dim, dim) * c(want, 0.0))));
        }
        j2 += 2;
    }
    Ok(AlgebraReport {
        realization: realization.name(),
        j_max,
        sectors_checked,
        commutator_defect: commutator,
        closure_defect: closure,
        casimir_defect: casimir,
        winding_shift: shift,
    })
}
