//! Core library of the monopole lab: closed-form non-Abelian monopole and
//! dyon fields on the three constant-curvature 3-spaces, the Wigner-function
//! angular machinery that underlies their quantum mechanics, isotopic and
//! Abelian gauge-frame transformations, radial Dirac systems with discrete
//! S³ spectra, and the discrete-symmetry operators acting on separated
//! wavefunctions.
//!
//! Everything here is deterministic, pure computation; all I/O lives in the
//! companion CLI crate.  Shared types (`CurvatureModel`, `HalfInt`,
//! `MonopoleSolution`, ...) are re-exported at the crate root.

pub mod bps;
pub mod dirac_radial;
pub mod error;
pub mod gauge;
pub mod geometry;
pub mod symmetry;
pub mod wigner;

pub use bps::{DyonSolution, MonopoleSolution, SeedFamily, SeedKind, SolutionKind, SolutionRecord};
pub use dirac_radial::{
    AbelianRadialSystem, DoubletRadialSystem, SpectralProblem, SpectralSystem, SpectrumReport,
    WProfile,
};
pub use error::{Error, Result};
pub use gauge::{AbelianGauge, AbelianGaugeKind, GaugeFieldSample, GibbsVector, IsoGaugeFrame};
pub use geometry::{CurvatureKind, CurvatureModel};
pub use symmetry::{
    AbelianSeparatedState, AngularGrid, DiscreteOperator, JRealization, SelectionOutcome,
    SeparatedDoubletState, TetradFrame, WuYangChart,
};
pub use wigner::{HalfInt, PauliVerdict, WignerIndex};
