//! Isotopic-space gauge machinery: SO(3) rotations in the Gibbs-vector
//! parametrization, the inhomogeneous gauge-transformation law for
//! triplet potentials, the Cartesian → Dirac-unitary → Schwinger pipeline
//! that diagonalizes the hedgehog Higgs direction, and the Abelian U(1)
//! monopole gauge family (Schwinger / Dirac / Wu–Yang charts).
//!
//! # Gibbs vectors
//!
//! A rotation by angle 2·arctan|c| about ĉ is encoded by c ∈ ℝ³ through
//!
//! ```text
//!   O(c) = I + 2[c^× + (c^×)²]/(1+c²),     (c^×)_{ij} = −ε_{ijk}c_k ,
//! ```
//!
//! with composition ⟨c′,c⟩ = (c′ + c + c′×c)/(1 − c′·c) (singular exactly
//! when the combined rotation angle reaches π) and inverse −c.  The SU(2)
//! lift is B(c) = (1 − i c·σ)/√(1+c²), satisfying
//! B(c)(v·σ)B†(c) = (O(c)v)·σ.
//!
//! # Gauge law
//!
//! Under a position-dependent c(x), a triplet scalar and potential map as
//!
//! ```text
//!   Φ′ = O(c)Φ,      W′_α = O(c)W_α + (1/e)·Δ(c)·∂_α c,
//!   Δ(c) = −2(I + c^×)/(1 + c²).
//! ```
//!
//! # The hedgehog pipeline
//!
//! The hedgehog configuration (isotopic triplets in spherical coordinates;
//! x = r·n̂, W^{(a)}_i = ε_{iab}x_b·K)
//!
//! ```text
//!   Φ^a = rΦ·n̂,  W_0 = rf·n̂,  W_r = 0,
//!   W_θ = Kr²(−sinφ, cosφ, 0),
//!   W_φ = Kr²(−sinθcosθcosφ, −sinθcosθsinφ, sin²θ)
//! ```
//!
//! is carried by c = tan(θ/2)(sinφ, −cosφ, 0) into the Dirac unitary
//! gauge (Φ′ ∥ ẑ) and further by c′ = (0, 0, −tan(φ/2)) into the
//! Schwinger unitary gauge
//!
//! ```text
//!   W^S_θ = (0, r²K + 1/e, 0),
//!   W^S_φ = (−(r²K + 1/e)sinθ, 0, (1/e)cosθ),
//! ```
//!
//! whose combined rotation O(c″), c″ = (tan(θ/2)tan(φ/2), −tan(θ/2),
//! −tan(φ/2)), is exactly the Cartesian→spherical tetrad matrix.  For the
//! embedded Abelian solution K = −1/(er²) the factor r²K + 1/e vanishes
//! and only the U(1) potential (1/e)cosθ survives.
//!
//! # Abelian charts
//!
//! The U(1) monopole potential A_φ comes in four conventional forms:
//! Schwinger g·cosθ (string on both poles), Dirac g(cosθ−1) (regular at
//! θ = 0), and the two Wu–Yang charts g(cosθ∓1) restricted to
//! θ < π/2 + ε and θ > π/2 − ε.  Frame data records the transition phase
//! e^{iαkφ} from the Schwinger frame and the realization of the conserved
//! J₃ (l₃, l₃−k, l₃+k) in each frame.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-width ε of the Wu–Yang equatorial overlap band: the N chart covers
/// θ < π/2 + ε, the S chart θ > π/2 − ε.
pub const WU_YANG_OVERLAP: f64 = 0.2;

/// Rotation encoded as a Gibbs vector: angle 2·arctan|c| about ĉ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsVector {
    pub c: Vector3<f64>,
}

impl GibbsVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        GibbsVector { c: Vector3::new(x, y, z) }
    }

    pub fn zero() -> Self {
        GibbsVector { c: Vector3::zeros() }
    }

    /// The antisymmetric matrix (c^×)_{ij} = −ε_{ijk}c_k, i.e.
    /// c^× v = c × v.
    pub fn cross_matrix(&self) -> Matrix3<f64> {
        let (x, y, z) = (self.c.x, self.c.y, self.c.z);
        Matrix3::new(0.0, -z, y, z, 0.0, -x, -y, x, 0.0)
    }

    /// Rotation angle 2·arctan|c| ∈ [0, π).
    pub fn angle(&self) -> f64 {
        2.0 * self.c.norm().atan()
    }

    /// The inverse rotation: Gibbs vectors invert by sign flip.
    pub fn inverse(&self) -> Self {
        GibbsVector { c: -self.c }
    }

    /// Composition ⟨outer, inner⟩ = apply `inner` first, then `outer`:
    /// O(⟨o,i⟩) = O(o)·O(i).  Singular when the combined angle reaches π
    /// (1 − o·i = 0), where the Gibbs chart has no representative.
    pub fn compose(outer: &GibbsVector, inner: &GibbsVector) -> Result<GibbsVector> {
        let denom = 1.0 - outer.c.dot(&inner.c);
        if denom.abs() < 1e-12 {
            return Err(Error::SingularConfiguration(
                "combined rotation angle reaches \u{3c0}; no Gibbs representative".into(),
            ));
        }
        Ok(GibbsVector { c: (outer.c + inner.c + outer.c.cross(&inner.c)) / denom })
    }
}

/// O(c) = I + 2[c^× + (c^×)²]/(1+c²): proper orthogonal for every finite c.
pub fn rotation_from_gibbs(g: &GibbsVector) -> Matrix3<f64> {
    let cx = g.cross_matrix();
    let denom = 1.0 + g.c.norm_squared();
    Matrix3::identity() + (cx + cx * cx) * (2.0 / denom)
}

/// The SU(2) lift B(c) = (1 − i c·σ)/√(1+c²); satisfies
/// B(c)(v·σ)B†(c) = (O(c)v)·σ and det B = 1.
pub fn spinor_from_gibbs(g: &GibbsVector) -> Matrix2<Complex64> {
    let n = 1.0 / (1.0 + g.c.norm_squared()).sqrt();
    let (x, y, z) = (g.c.x, g.c.y, g.c.z);
    // c·σ = [[z, x−iy], [x+iy, −z]]
    Matrix2::new(
        Complex64::new(n, -z * n),
        Complex64::new(-y * n, -x * n),
        Complex64::new(y * n, -x * n),
        Complex64::new(n, z * n),
    )
}

/// The inhomogeneous-term matrix Δ(c) = −2(I + c^×)/(1+c²) of the gauge
/// law W′ = O W + (1/e)Δ ∂c.
pub fn delta_matrix(g: &GibbsVector) -> Matrix3<f64> {
    let denom = 1.0 + g.c.norm_squared();
    (Matrix3::identity() + g.cross_matrix()) * (-2.0 / denom)
}

/// The rotation carrying B onto D along the shortest arc, as a Gibbs
/// vector: c = (B̂ × D̂)/(1 + B̂·D̂).  Both vectors must be nonzero and not
/// antiparallel (the π-rotation is outside the Gibbs chart and the arc is
/// ambiguous anyway).
pub fn gibbs_between(b: &Vector3<f64>, d: &Vector3<f64>) -> Result<GibbsVector> {
    let (nb, nd) = (b.norm(), d.norm());
    if nb == 0.0 || nd == 0.0 || !nb.is_finite() || !nd.is_finite() {
        return Err(Error::Parameter("gibbs_between needs two nonzero finite vectors".into()));
    }
    let bu = b / nb;
    let du = d / nd;
    let denom = 1.0 + bu.dot(&du);
    if denom < 1e-12 {
        return Err(Error::SingularConfiguration(
            "antiparallel directions: rotation axis undetermined".into(),
        ));
    }
    Ok(GibbsVector { c: bu.cross(&du) / denom })
}

/// Coordinate labels for covector components of the potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordLabel {
    T,
    /// r in the flat chart, χ in the geodesic chart — the radial leg.
    Radial,
    Theta,
    Phi,
}

impl CoordLabel {
    pub const ALL: [CoordLabel; 4] = [CoordLabel::T, CoordLabel::Radial, CoordLabel::Theta, CoordLabel::Phi];

    pub fn index(self) -> usize {
        match self {
            CoordLabel::T => 0,
            CoordLabel::Radial => 1,
            CoordLabel::Theta => 2,
            CoordLabel::Phi => 3,
        }
    }
}

/// One spacetime point's worth of isotriplet fields: the scalar triplet
/// and the four covector components of the potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeFieldSample {
    pub phi: Vector3<f64>,
    /// Indexed t, radial, θ, φ.
    pub w: [Vector3<f64>; 4],
}

impl GaugeFieldSample {
    pub fn w(&self, label: CoordLabel) -> &Vector3<f64> {
        &self.w[label.index()]
    }

    /// Componentwise max-abs difference over Φ and all four W legs.
    pub fn max_abs_diff(&self, other: &GaugeFieldSample) -> f64 {
        let mut m = (self.phi - other.phi).amax();
        for i in 0..4 {
            m = m.max((self.w[i] - other.w[i]).amax());
        }
        m
    }
}

/// Applies the gauge law at one point with the c-field's derivatives
/// supplied analytically: Φ′ = OΦ, W′_α = O W_α + (1/e)Δ(c)·∂_α c.
pub fn gauge_transform_with_derivatives(
    sample: &GaugeFieldSample,
    c: &GibbsVector,
    dc: &[Vector3<f64>; 4],
    e: f64,
) -> GaugeFieldSample {
    let o = rotation_from_gibbs(c);
    let delta = delta_matrix(c);
    let mut w = [Vector3::zeros(); 4];
    for i in 0..4 {
        w[i] = o * sample.w[i] + delta * dc[i] / e;
    }
    GaugeFieldSample { phi: o * sample.phi, w }
}

/// Applies the gauge law with the c-field given as a closure of the
/// spatial point (r, θ, φ); spatial derivatives are central differences
/// with step 1e−6, the t-derivative of a static c-field is zero.
pub fn gauge_transform<F>(
    sample: &GaugeFieldSample,
    c_field: F,
    point: (f64, f64, f64),
    e: f64,
) -> Result<GaugeFieldSample>
where
    F: Fn(f64, f64, f64) -> Result<GibbsVector>,
{
    let (r, th, ph) = point;
    let c0 = c_field(r, th, ph)?;
    let h = 1e-6;
    let diff = |p: GibbsVector, m: GibbsVector| (p.c - m.c) / (2.0 * h);
    let dc = [
        Vector3::zeros(),
        diff(c_field(r + h, th, ph)?, c_field(r - h, th, ph)?),
        diff(c_field(r, th + h, ph)?, c_field(r, th - h, ph)?),
        diff(c_field(r, th, ph + h)?, c_field(r, th, ph - h)?),
    ];
    Ok(gauge_transform_with_derivatives(sample, &c0, &dc, e))
}

/// The hedgehog sample at (r, θ, φ) for radial profiles (K, Φ, f): the
/// Cartesian-isotopic form of a spherically symmetric triplet
/// configuration expressed in spherical coordinate components.
pub fn hedgehog_sample(r: f64, theta: f64, phi: f64, k_val: f64, phi_val: f64, f_val: f64) -> GaugeFieldSample {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let n = Vector3::new(st * cp, st * sp, ct);
    let r2k = k_val * r * r;
    GaugeFieldSample {
        phi: n * (r * phi_val),
        w: [
            n * (r * f_val),
            Vector3::zeros(),
            Vector3::new(-sp, cp, 0.0) * r2k,
            Vector3::new(-st * ct * cp, -st * ct * sp, st * st) * r2k,
        ],
    }
}

/// Closed form of the hedgehog after rotation into the Dirac unitary
/// gauge (Higgs direction ∥ ẑ, polar-axis string at θ = π):
/// W′_θ = (r²K + 1/e)(−sinφ, cosφ, 0),
/// W′_φ = (−(r²K+1/e)sinθcosφ, −(r²K+1/e)sinθsinφ, (1/e)(cosθ−1)).
pub fn dirac_unitary_target(r: f64, theta: f64, phi: f64, k_val: f64, phi_val: f64, f_val: f64, e: f64) -> GaugeFieldSample {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let x = k_val * r * r + 1.0 / e;
    GaugeFieldSample {
        phi: Vector3::new(0.0, 0.0, r * phi_val),
        w: [
            Vector3::new(0.0, 0.0, r * f_val),
            Vector3::zeros(),
            Vector3::new(-sp, cp, 0.0) * x,
            Vector3::new(-x * st * cp, -x * st * sp, (ct - 1.0) / e),
        ],
    }
}

/// Closed form in the Schwinger unitary gauge (φ-independent triplet
/// directions): W^S_θ = (0, r²K+1/e, 0),
/// W^S_φ = (−(r²K+1/e)sinθ, 0, (1/e)cosθ).
pub fn schwinger_target(r: f64, theta: f64, k_val: f64, phi_val: f64, f_val: f64, e: f64) -> GaugeFieldSample {
    let (st, ct) = theta.sin_cos();
    let x = k_val * r * r + 1.0 / e;
    GaugeFieldSample {
        phi: Vector3::new(0.0, 0.0, r * phi_val),
        w: [
            Vector3::new(0.0, 0.0, r * f_val),
            Vector3::zeros(),
            Vector3::new(0.0, x, 0.0),
            Vector3::new(-x * st, 0.0, ct / e),
        ],
    }
}

/// The Gibbs field c(θ, φ) = tan(θ/2)(sinφ, −cosφ, 0) rotating the
/// hedgehog Higgs direction n̂_{θφ} onto ẑ (Cartesian → Dirac unitary).
/// Undefined at θ = π (the Dirac string).
pub fn c_to_dirac(theta: f64, phi: f64) -> Result<GibbsVector> {
    let t = half_tan(theta)?;
    Ok(GibbsVector::new(t * phi.sin(), -t * phi.cos(), 0.0))
}

/// Analytic (r, θ, φ)-derivatives of [`c_to_dirac`]:
/// ∂_θ c = ½sec²(θ/2)(sinφ, −cosφ, 0), ∂_φ c = tan(θ/2)(cosφ, sinφ, 0).
pub fn c_to_dirac_derivatives(theta: f64, phi: f64) -> Result<[Vector3<f64>; 4]> {
    let t = half_tan(theta)?;
    let half_sec2 = 0.5 * (1.0 + t * t);
    let (sp, cp) = phi.sin_cos();
    Ok([
        Vector3::zeros(),
        Vector3::zeros(),
        Vector3::new(half_sec2 * sp, -half_sec2 * cp, 0.0),
        Vector3::new(t * cp, t * sp, 0.0),
    ])
}

/// The second-leg Gibbs field c′(φ) = (0, 0, −tan(φ/2)) (Dirac unitary →
/// Schwinger).  Undefined at φ = π.
pub fn c_to_schwinger(phi: f64) -> Result<GibbsVector> {
    Ok(GibbsVector::new(0.0, 0.0, -half_tan(phi)?))
}

/// Analytic derivatives of [`c_to_schwinger`]: ∂_φ c′ = (0, 0, −½sec²(φ/2)).
pub fn c_to_schwinger_derivatives(phi: f64) -> Result<[Vector3<f64>; 4]> {
    let t = half_tan(phi)?;
    Ok([
        Vector3::zeros(),
        Vector3::zeros(),
        Vector3::zeros(),
        Vector3::new(0.0, 0.0, -0.5 * (1.0 + t * t)),
    ])
}

fn half_tan(angle: f64) -> Result<f64> {
    // tan(angle/2) diverges at angle ≡ π (mod 2π); the float tan is merely
    // huge there, so test the angular distance explicitly.
    let two_pi = 2.0 * std::f64::consts::PI;
    let d = (angle - std::f64::consts::PI).rem_euclid(two_pi);
    if d.min(two_pi - d) < 1e-9 {
        return Err(Error::Singularity(format!(
            "tan({angle}/2) diverges: point lies on the gauge string"
        )));
    }
    let t = (0.5 * angle).tan();
    if !t.is_finite() {
        return Err(Error::Singularity(format!("tan({angle}/2) not finite")));
    }
    Ok(t)
}

/// The three isotopic gauge frames of the hedgehog pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoGaugeFrame {
    CartesianIso,
    DiracIso,
    SchwingerIso,
}

/// The Gibbs vector carrying fields from frame `from` to frame `to` at
/// angles (θ, φ).  Cartesian→Schwinger is the composition ⟨c′, c⟩, whose
/// rotation is the Cartesian→spherical tetrad matrix with rows
/// (cosθcosφ, cosθsinφ, −sinθ), (−sinφ, cosφ, 0),
/// (sinθcosφ, sinθsinφ, cosθ).
pub fn iso_transition_gibbs(from: IsoGaugeFrame, to: IsoGaugeFrame, theta: f64, phi: f64) -> Result<GibbsVector> {
    use IsoGaugeFrame::*;
    Ok(match (from, to) {
        (a, b) if a == b => GibbsVector::zero(),
        (CartesianIso, DiracIso) => c_to_dirac(theta, phi)?,
        (DiracIso, CartesianIso) => c_to_dirac(theta, phi)?.inverse(),
        (DiracIso, SchwingerIso) => c_to_schwinger(phi)?,
        (SchwingerIso, DiracIso) => c_to_schwinger(phi)?.inverse(),
        (CartesianIso, SchwingerIso) => {
            GibbsVector::compose(&c_to_schwinger(phi)?, &c_to_dirac(theta, phi)?)?
        }
        (SchwingerIso, CartesianIso) => {
            GibbsVector::compose(&c_to_schwinger(phi)?, &c_to_dirac(theta, phi)?)?.inverse()
        }
        _ => unreachable!(),
    })
}

/// Which U(1) potential convention is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbelianGaugeKind {
    /// A_φ = g·cosθ; string through both poles.
    SchwingerU1,
    /// A_φ = g(cosθ − 1); regular on the north axis.
    DiracU1,
    /// A_φ = g(cosθ − 1) on the chart θ < π/2 + ε.
    WuYangN,
    /// A_φ = g(cosθ + 1) on the chart θ > π/2 − ε.
    WuYangS,
}

/// A U(1) monopole gauge choice with magnetic charge g.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbelianGauge {
    pub kind: AbelianGaugeKind,
    pub g: f64,
}

/// The φ-component of the U(1) monopole potential at polar angle θ.
/// Wu–Yang variants refuse evaluation outside their chart.
pub fn abelian_potential(gauge: &AbelianGauge, theta: f64) -> Result<f64> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!("polar angle must lie in [0, \u{3c0}], got {theta}")));
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    match gauge.kind {
        AbelianGaugeKind::SchwingerU1 => Ok(gauge.g * theta.cos()),
        AbelianGaugeKind::DiracU1 => Ok(gauge.g * (theta.cos() - 1.0)),
        AbelianGaugeKind::WuYangN => {
            if theta >= half_pi + WU_YANG_OVERLAP {
                return Err(Error::Domain(format!(
                    "north chart covers \u{3b8} < \u{3c0}/2 + {WU_YANG_OVERLAP}, got {theta}"
                )));
            }
            Ok(gauge.g * (theta.cos() - 1.0))
        }
        AbelianGaugeKind::WuYangS => {
            if theta <= half_pi - WU_YANG_OVERLAP {
                return Err(Error::Domain(format!(
                    "south chart covers \u{3b8} > \u{3c0}/2 - {WU_YANG_OVERLAP}, got {theta}"
                )));
            }
            Ok(gauge.g * (theta.cos() + 1.0))
        }
    }
}

/// Frame bookkeeping for a U(1) gauge choice: the transition phase from
/// the Schwinger frame (Ψ_frame = e^{i·α·kφ}·Ψ_Schwinger, α recorded in
/// units of k = eg) and the realization of the conserved J₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct U1FrameData {
    /// α in Ψ_frame = e^{iαkφ} Ψ_Schwinger: 0, +1 (Dirac, Wu–Yang N), −1 (Wu–Yang S).
    pub phase_exponent_in_k: i32,
    /// Human-readable J₃ realization: "l3", "l3 - k", or "l3 + k".
    pub j3_form: &'static str,
}

/// The transition phase and J₃ realization for each U(1) frame: only the
/// Schwinger frame realizes J₃ = l₃ = −i∂_φ; Dirac and Wu–Yang N shift it
/// to l₃ − k, Wu–Yang S to l₃ + k.
pub fn u1_frame_data(kind: AbelianGaugeKind) -> U1FrameData {
    match kind {
        AbelianGaugeKind::SchwingerU1 => U1FrameData { phase_exponent_in_k: 0, j3_form: "l3" },
        AbelianGaugeKind::DiracU1 | AbelianGaugeKind::WuYangN => {
            U1FrameData { phase_exponent_in_k: 1, j3_form: "l3 - k" }
        }
        AbelianGaugeKind::WuYangS => U1FrameData { phase_exponent_in_k: -1, j3_form: "l3 + k" },
    }
}
