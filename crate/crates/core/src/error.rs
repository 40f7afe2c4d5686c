//! Error type shared by all modules.

/// Errors reported by chain construction, spectral decomposition,
/// measure reconstruction, surgery, and transfer analysis.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("{couplings} couplings do not match {fields} fields (need fields = couplings + 1)")]
    DimensionMismatch { couplings: usize, fields: usize },

    #[error("coupling J_{index} = {value} must be positive and finite")]
    InvalidCoupling { index: usize, value: f64 },

    #[error("field B_{index} = {value} must be finite")]
    InvalidField { index: usize, value: f64 },

    #[error("eigensolver failed to converge on a {size}x{size} tridiagonal matrix")]
    EigensolverFailure { size: usize },

    #[error("weight underflow: w_{index} = {value:e} is below 1e-300")]
    WeightUnderflow { index: usize, value: f64 },

    #[error("degenerate spectrum: minimum gap {gap:.3e} is below 1e-12 of the spectral range {range:.3e}")]
    DegenerateSpectrum { gap: f64, range: f64 },

    #[error("spectral points must be strictly ascending (violation at index {index})")]
    PointsNotAscending { index: usize },

    #[error("weight w_{index} = {value} must be positive and finite")]
    InvalidWeight { index: usize, value: f64 },

    #[error("empty measure: at least one spectral point is required")]
    EmptyMeasure,

    #[error("measure not realizable at requested precision (orthogonalization broke down at step {step})")]
    MeasureNotRealizable { step: usize },

    #[error("invalid chain family parameters: {0}")]
    InvalidFamily(String),

    #[error("coupling formula breakdown at site {index}: J^2 = {value:e}")]
    FormulaBreakdown { index: usize, value: f64 },

    #[error("weight formula breakdown at level {index}: raw weight = {value:e}")]
    WeightFormulaBreakdown { index: usize, value: f64 },

    #[error("chain exhausted: {steps} surgery steps do not fit on {sites} sites")]
    ChainExhausted { sites: usize, steps: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
