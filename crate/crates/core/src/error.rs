use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series needs at least one coefficient")]
    EmptySeries,

    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("operation needs series order at least {required}, got {actual}")]
    OrderTooSmall { required: usize, actual: usize },

    #[error("leading coefficient {modulus:e} is below the division tolerance")]
    NearZeroLeadingCoefficient { modulus: f64 },

    #[error("constant term must be 1 for the principal logarithm, found {re} + {im}i")]
    LeadingCoefficientNotOne { re: f64, im: f64 },

    #[error("constant term must vanish, found modulus {modulus:e}")]
    NonzeroConstantTerm { modulus: f64 },

    #[error("series is not invertible: linear coefficient has modulus {modulus:e}")]
    NotInvertible { modulus: f64 },

    #[error("series is not normalized (expected c0 = 0, c1 = 1)")]
    NotNormalized,

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("point {re} + {im}i is too close to a pole")]
    PoleProximity { re: f64, im: f64 },

    #[error("point {re} + {im}i is outside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("logarithm branch discontinuity at {re} + {im}i")]
    BranchDiscontinuity { re: f64, im: f64 },

    #[error("quadrature did not converge (estimated error {abs_error:e})")]
    QuadratureNonConvergence { abs_error: f64 },

    #[error("curve has an empty locus for the given parameters")]
    EmptyLocus,

    #[error("polygon is degenerate: {0}")]
    DegeneratePolygon(String),

    #[error("Schwarz bound violated: max |w(z)| - |z| = {margin:e}")]
    SchwarzBoundViolated { margin: f64 },

    #[error("malformed series document: {0}")]
    Format(String),
}
