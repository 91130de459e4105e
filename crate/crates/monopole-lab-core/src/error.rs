use thiserror::Error;

/// Library-wide error type.
///
/// Numerical code here refuses to guess: evaluating a conformal chart outside
/// its range, hitting a seed-function pole, or feeding an integrator a
/// non-monotone grid are all hard errors rather than NaNs that surface three
/// modules later.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coordinate left the chart on which the geometry is defined,
    /// e.g. r ≥ 2ρ in the Lobachevsky conformal chart.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation too close to a pole of a seed function, or r below the
    /// small-radius guard where K, Φ ~ 1/(e r²) overflow.
    #[error("singularity: {0}")]
    Singularity(String),

    /// A parameter violates a documented precondition (|c| ≥ 1 for a dyon,
    /// e ≤ 0, ε ≥ m on the decaying branch, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Angular-momentum indices that do not label a representation state,
    /// e.g. |m| > j or j − m not an integer.
    #[error("invalid index: {0}")]
    Index(String),

    /// Two vectors define no unique rotation (antiparallel or zero input).
    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    /// Mismatched dimensions or incompatible quantum numbers between inputs.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// The requested operation is undefined for this variant
    /// (e.g. real eigenvalues of the non-self-adjoint W ≠ 0 doublet).
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
