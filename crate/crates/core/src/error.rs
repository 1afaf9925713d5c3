use thiserror::Error;

use crate::exactalg::Poly;
use crate::report::ViolationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {what} (expected {expected}, got {got})")]
    DimensionMismatch { what: &'static str, expected: usize, got: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    /// The one-form `A_k du^k` is not closed: `dA_k/du^l - dA_l/du^k != 0`.
    #[error("{stage}: one-form not exact at pair ({k}, {l}), residual {residual}")]
    NotExact { stage: &'static str, k: usize, l: usize, residual: Poly },

    #[error("metric is singular at the sample point")]
    SingularMetric,

    #[error("|K| = {0} is not the square of a rational")]
    NonSquareCurvature(String),

    #[error("tail weight {0} is not the square of a rational")]
    NonSquareWeight(String),

    #[error("bracket is not Poisson ({} violations)", .0.len())]
    NotPoisson(ViolationReport),

    #[error("canonical data does not satisfy the integrability system ({} violations)", .0.len())]
    NotIntegrable(ViolationReport),

    #[error("gauge matrix is not constant at ({i}, {j}): {residual}")]
    NonConstantGauge { i: usize, j: usize, residual: Poly },

    #[error("reconstructed potentials do not reproduce the bracket")]
    ReconstructionMismatch,

    #[error("inverse derivative of a field with non-zero mean {mean:e} (tolerance {tol:e})")]
    NonZeroMean { mean: f64, tol: f64 },

    #[error("field left the finite range at step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },

    #[error("invalid grid size {0}: need a power of two >= 16")]
    InvalidGrid(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "E_DIMENSION_MISMATCH",
            Error::IndexOutOfRange { .. } => "E_INDEX_OUT_OF_RANGE",
            Error::NotExact { .. } => "E_NOT_EXACT",
            Error::SingularMetric => "E_SINGULAR_METRIC",
            Error::NonSquareCurvature(_) => "E_NON_SQUARE_CURVATURE",
            Error::NonSquareWeight(_) => "E_NON_SQUARE_WEIGHT",
            Error::NotPoisson(_) => "E_NOT_POISSON",
            Error::NotIntegrable(_) => "E_NOT_INTEGRABLE",
            Error::NonConstantGauge { .. } => "E_NON_CONSTANT_GAUGE",
            Error::ReconstructionMismatch => "E_RECONSTRUCTION_MISMATCH",
            Error::NonZeroMean { .. } => "E_NON_ZERO_MEAN",
            Error::NonFinite { .. } => "E_NON_FINITE",
            Error::InvalidGrid(_) => "E_INVALID_GRID",
            Error::InvalidArgument(_) => "E_INVALID_ARGUMENT",
        }
    }
}

pub(crate) fn check_dim(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { what, expected, got })
    }
}
