use thiserror::Error;

use crate::report::ExperimentReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. The `Display` form starts with the
/// variant name so command-line callers can match on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DegenerateInput: {0}")]
    DegenerateInput(String),

    #[error("DimensionUnsupported: {what} supports dimension <= {max}, got {dim}")]
    DimensionUnsupported {
        what: &'static str,
        dim: usize,
        max: usize,
    },

    #[error("InvalidPolytope: {0}")]
    InvalidPolytope(String),

    #[error("DimensionMismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("NotInterior: point {0:?} is not in the open domain")]
    NotInterior(Vec<f64>),

    #[error("CoincidentPoints: a chord needs two distinct points")]
    CoincidentPoints,

    #[error("NotOnBoundary: point {0:?} is not on the domain boundary")]
    NotOnBoundary(Vec<f64>),

    #[error("SingularMatrix: projective matrix is not invertible")]
    SingularMatrix,

    #[error("ImproperTransform: the closed domain meets the hyperplane at infinity")]
    ImproperTransform,

    #[error("NonPositiveWeight: simplex weights must be positive and sum to 1, got {0:?}")]
    NonPositiveWeight(Vec<f64>),

    #[error("NotASimplex: expected {expected} vertices, polytope has {got}")]
    NotASimplex { expected: usize, got: usize },

    #[error("NotAGeodesicTriple: {0}")]
    NotAGeodesicTriple(String),

    #[error("NotCertified: the path failed the additivity certificate")]
    NotCertified,

    #[error("HypothesisViolated: {0}")]
    HypothesisViolated(String),

    #[error("TargetMismatch: approach sequences must share the boundary target")]
    TargetMismatch,

    #[error("BasepointTooClose: basepoint is {distance:e} from the boundary")]
    BasepointTooClose { distance: f64 },

    #[error("LengthMismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("NotPositive: entries must be finite and strictly positive")]
    NotPositive,

    #[error("MarginalMismatch: row marginals sum to {rows}, column marginals to {cols}")]
    MarginalMismatch { rows: f64, cols: f64 },

    #[error("NotConverged: stopped after {} sweeps", .0.values.len())]
    NotConverged(Box<ExperimentReport>),

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}
