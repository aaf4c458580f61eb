use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected N = {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("model dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate window: the analyzing operator is zero")]
    DegenerateWindow,

    #[error("degenerate signal: the window vector is zero")]
    DegenerateSignal,

    #[error("not a frame: lower bound {lower:e} is below tolerance relative to upper bound {upper:e}")]
    NotAFrame { lower: f64, upper: f64 },

    #[error("weight is not v-moderate: m(z + w) > v(z) m(w) at z = ({0}, {1}), w = ({2}, {3})")]
    NotModerate(usize, usize, usize, usize),

    #[error("weight must be strictly positive, found {value} at ({k}, {l})")]
    NonPositiveWeight { k: usize, l: usize, value: f64 },

    #[error("symbol must be nonnegative, found {value} at ({k}, {l})")]
    NegativeSymbol { k: usize, l: usize, value: f64 },

    #[error("{side} = {value} does not divide N = {n}")]
    NotDivisor { side: &'static str, value: usize, n: usize },

    #[error("sequence index set does not match lattice: expected {expected} entries, found {found}")]
    IndexMismatch { expected: usize, found: usize },

    #[error("N = {n} exceeds the dense storage limit {limit}; use the on-demand evaluator")]
    TooLargeForDense { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
