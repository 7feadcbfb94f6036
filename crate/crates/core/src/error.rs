//! Error type shared by the whole crate.
//!
//! Diagnostic payloads are stored as `f64` regardless of the working scalar
//! type so the error enum itself stays non-generic.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building distributions, evaluating
/// functionals or running the optimizers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("negative sample {value} at index {index}")]
    NegativeSample { index: usize, value: f64 },

    #[error("tabulated grid needs at least {min} points, got {len}")]
    GridTooSmall { len: usize, min: usize },

    #[error("grid abscissae must be strictly increasing at index {index}")]
    GridNotIncreasing { index: usize },

    #[error("grid must cover [0,1] exactly, got [{first}, {last}]")]
    GridNotCovering { first: f64, last: f64 },

    #[error("degenerate distribution: u vanishes on an initial interval [0, {delta}]")]
    DegenerateDistribution { delta: f64 },

    #[error("lambda function must be non-decreasing, violated at index {index}")]
    NonMonotoneLambda { index: usize },

    #[error("lambda function must vanish at sigma = 0, got {value}")]
    LambdaNotAnchored { value: f64 },

    #[error("Brillouin condition violated: u = {max_u} > 1 at sigma = {at_sigma}")]
    BrillouinViolation { max_u: f64, at_sigma: f64 },

    #[error("{name} = {value} outside valid range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{context} failed to converge: {detail}")]
    NoConvergence {
        context: &'static str,
        detail: String,
    },

    #[error("csv parse error on line {line}: {detail}")]
    Csv { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain<T: num_traits::ToPrimitive>(
        name: &'static str,
        value: T,
        range: &'static str,
    ) -> Self {
        Error::Domain {
            name,
            value: value.to_f64().unwrap_or(f64::NAN),
            range,
        }
    }
}
