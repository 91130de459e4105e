//! Constant-curvature 3-space models in conformally flat coordinates.
//!
//! All three geometries of constant curvature — Euclidean E³, spherical S³
//! (Riemann), hyperbolic H³ (Lobachevsky) — are described by one chart with
//! line element
//!
//! ```text
//!     dl² = ( dr² + r² dΩ² ) / Σ²(r),
//!
//!     Σ =  1                 (E³)
//!     Σ =  1 + r²/(4ρ²)      (S³)
//!     Σ =  1 − r²/(4ρ²)      (H³, valid only for r < 2ρ)
//! ```
//!
//! where ρ is the curvature radius.  The geodesic radial coordinate χ
//! (proper distance from the origin) satisfies dχ = dr/Σ, giving the
//! mutually inverse maps
//!
//! ```text
//!     S³:  r = 2ρ tan(χ/2ρ),   χ ∈ [0, πρ)
//!     H³:  r = 2ρ tanh(χ/2ρ),  χ ∈ [0, ∞)       (so always r < 2ρ)
//!     E³:  r = χ.
//! ```
//!
//! In terms of χ the metric takes the familiar forms dχ² + ρ²sin²(χ/ρ)dΩ²
//! and dχ² + ρ²sinh²(χ/ρ)dΩ².  The default is the dimensionless convention
//! ρ = 1 (lengths measured in units of the curvature radius); a physical
//! ρ simply rescales r and χ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the three constant-curvature geometries a model describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureKind {
    /// Flat Euclidean space, Σ ≡ 1, zero curvature.
    Euclid,
    /// Spherical space S³ of positive curvature +1/ρ².
    Riemann,
    /// Hyperbolic (Lobachevsky) space H³ of negative curvature −1/ρ².
    Lobachevsky,
}

impl CurvatureKind {
    /// Lower-case name used in CLI flags and serialized records.
    pub fn name(self) -> &'static str {
        match self {
            CurvatureKind::Euclid => "euclid",
            CurvatureKind::Riemann => "riemann",
            CurvatureKind::Lobachevsky => "lobachevsky",
        }
    }
}

/// A constant-curvature 3-space: geometry kind plus curvature radius ρ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureModel {
    pub kind: CurvatureKind,
    pub rho: f64,
}

impl CurvatureModel {
    /// Model with explicit curvature radius; rejects ρ ≤ 0 or non-finite ρ.
    pub fn new(kind: CurvatureKind, rho: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Parameter(format!(
                "curvature radius must be positive and finite, got rho = {rho}"
            )));
        }
        Ok(CurvatureModel { kind, rho })
    }

    /// Dimensionless model, ρ = 1.
    pub fn dimensionless(kind: CurvatureKind) -> Self {
        CurvatureModel { kind, rho: 1.0 }
    }

    /// Flat E³ (ρ is irrelevant but kept at 1 for uniformity).
    pub fn euclid() -> Self {
        Self::dimensionless(CurvatureKind::Euclid)
    }

    /// Unit-radius sphere S³.
    pub fn riemann() -> Self {
        Self::dimensionless(CurvatureKind::Riemann)
    }

    /// Unit-radius hyperbolic space H³.
    pub fn lobachevsky() -> Self {
        Self::dimensionless(CurvatureKind::Lobachevsky)
    }

    /// Checks that r lies on the conformal chart: r ≥ 0 always, and
    /// r < 2ρ in the hyperbolic case, where the chart ends at the
    /// absolute. Out-of-chart values are a hard error, never clamped:
    /// clamping would silently corrupt residual checks downstream.
    pub fn check_r(&self, r: f64) -> Result<()> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!(
                "radial coordinate must be finite and nonnegative, got r = {r}"
            )));
        }
        if self.kind == CurvatureKind::Lobachevsky && r >= 2.0 * self.rho {
            return Err(Error::Domain(format!(
                "hyperbolic conformal chart requires r < 2*rho = {}, got r = {r}",
                2.0 * self.rho
            )));
        }
        Ok(())
    }

    /// Conformal factor Σ(r).
    pub fn sigma(&self, r: f64) -> Result<f64> {
        self.check_r(r)?;
        let q = r * r / (4.0 * self.rho * self.rho);
        Ok(match self.kind {
            CurvatureKind::Euclid => 1.0,
            CurvatureKind::Riemann => 1.0 + q,
            CurvatureKind::Lobachevsky => 1.0 - q,
        })
    }

    /// Radial derivative dΣ/dr = ±r/(2ρ²) (0 in flat space).
    pub fn sigma_prime(&self, r: f64) -> Result<f64> {
        self.check_r(r)?;
        let s = r / (2.0 * self.rho * self.rho);
        Ok(match self.kind {
            CurvatureKind::Euclid => 0.0,
            CurvatureKind::Riemann => s,
            CurvatureKind::Lobachevsky => -s,
        })
    }

    /// Geodesic distance χ(r) from the origin, the inverse of
    /// [`r_from_chi`](Self::r_from_chi):
    /// 2ρ·arctan(r/2ρ) on S³, 2ρ·artanh(r/2ρ) on H³, r itself on E³.
    pub fn chi_from_r(&self, r: f64) -> Result<f64> {
        self.check_r(r)?;
        let h = 2.0 * self.rho;
        Ok(match self.kind {
            CurvatureKind::Euclid => r,
            CurvatureKind::Riemann => h * (r / h).atan(),
            CurvatureKind::Lobachevsky => h * (r / h).atanh(),
        })
    }

    /// Conformal radius r(χ): 2ρ·tan(χ/2ρ) on S³ (chart χ < πρ),
    /// 2ρ·tanh(χ/2ρ) on H³, χ on E³.
    pub fn r_from_chi(&self, chi: f64) -> Result<f64> {
        if !chi.is_finite() || chi < 0.0 {
            return Err(Error::Domain(format!(
                "geodesic coordinate must be finite and nonnegative, got chi = {chi}"
            )));
        }
        let h = 2.0 * self.rho;
        match self.kind {
            CurvatureKind::Euclid => Ok(chi),
            CurvatureKind::Riemann => {
                // The r-chart covers only χ < πρ; at χ = πρ the conformal
                // radius diverges (antipode reached as r → ∞).
                if chi >= std::f64::consts::PI * self.rho {
                    return Err(Error::Domain(format!(
                        "spherical conformal chart requires chi < pi*rho = {}, got chi = {chi}",
                        std::f64::consts::PI * self.rho
                    )));
                }
                Ok(h * (chi / h).tan())
            }
            CurvatureKind::Lobachevsky => Ok(h * (chi / h).tanh()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sigma_flat_is_one() {
        let m = CurvatureModel::euclid();
        assert_eq!(m.sigma(7.3).unwrap(), 1.0);
        assert_eq!(m.sigma(0.0).unwrap(), 1.0);
    }

    #[test]
    fn sigma_sphere_values() {
        let m = CurvatureModel::riemann();
        assert_eq!(m.sigma(0.0).unwrap(), 1.0);
        // 1 + 4/4 = 2, exact in floating point.
        assert_eq!(m.sigma(2.0).unwrap(), 2.0);
    }

    #[test]
    fn sigma_hyperbolic_chart_bound() {
        let m = CurvatureModel::lobachevsky();
        assert!(m.sigma(1.9999).is_ok());
        assert!(matches!(m.sigma(2.0), Err(Error::Domain(_))));
        assert!(matches!(m.sigma(5.0), Err(Error::Domain(_))));
        // With a larger radius the same r is fine.
        let m2 = CurvatureModel::new(CurvatureKind::Lobachevsky, 3.0).unwrap();
        assert!((m2.sigma(2.0).unwrap() - (1.0 - 4.0 / 36.0)).abs() < 1e-15);
    }

    #[test]
    fn chi_r_examples() {
        let m = CurvatureModel::riemann();
        assert_eq!(m.r_from_chi(0.0).unwrap(), 0.0);
        // χ = π/2 → r = 2 tan(π/4) = 2.
        assert!((m.r_from_chi(PI / 2.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((m.chi_from_r(2.0).unwrap() - PI / 2.0).abs() < 1e-14);
        // Chart edge.
        assert!(m.r_from_chi(PI).is_err());
    }

    #[test]
    fn chi_r_roundtrip_all_models() {
        for m in [
            CurvatureModel::euclid(),
            CurvatureModel::riemann(),
            CurvatureModel::lobachevsky(),
            CurvatureModel::new(CurvatureKind::Riemann, 2.5).unwrap(),
            CurvatureModel::new(CurvatureKind::Lobachevsky, 0.7).unwrap(),
        ] {
            for i in 0..100 {
                // Stay inside every chart: hyperbolic needs r < 2ρ.
                let rmax = match m.kind {
                    CurvatureKind::Lobachevsky => 2.0 * m.rho * 0.999,
                    _ => 10.0 * m.rho,
                };
                let r = rmax * (i as f64 + 0.5) / 100.0;
                let chi = m.chi_from_r(r).unwrap();
                let back = m.r_from_chi(chi).unwrap();
                assert!(
                    (back - r).abs() <= 1e-12 * r.max(1.0),
                    "roundtrip failed: kind={:?} r={r} back={back}",
                    m.kind
                );
            }
        }
    }

    #[test]
    fn sigma_prime_matches_difference_quotient() {
        for m in [
            CurvatureModel::riemann(),
            CurvatureModel::lobachevsky(),
            CurvatureModel::new(CurvatureKind::Riemann, 3.0).unwrap(),
        ] {
            for &r in &[0.3, 0.9, 1.4] {
                let h = 1e-6;
                let fd = (m.sigma(r + h).unwrap() - m.sigma(r - h).unwrap()) / (2.0 * h);
                assert!((fd - m.sigma_prime(r).unwrap()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sigma_bounds_on_chart() {
        let s3 = CurvatureModel::riemann();
        let h3 = CurvatureModel::lobachevsky();
        for i in 0..50 {
            let r = 1.99 * (i as f64 + 0.5) / 50.0;
            assert!(s3.sigma(r).unwrap() >= 1.0);
            let sh = h3.sigma(r).unwrap();
            assert!(sh > 0.0 && sh <= 1.0);
        }
    }

    #[test]
    fn rejects_bad_rho() {
        assert!(CurvatureModel::new(CurvatureKind::Riemann, 0.0).is_err());
        assert!(CurvatureModel::new(CurvatureKind::Riemann, -1.0).is_err());
        assert!(CurvatureModel::new(CurvatureKind::Riemann, f64::NAN).is_err());
    }
}
