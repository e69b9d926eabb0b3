use thiserror::Error;

pub type Result<T, E = BoundError> = std::result::Result<T, E>;

/// Domain violations. Every precondition failure is a hard error; nothing is
/// silently clamped except final probabilities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("population size must be at least 2, got N={0}")]
    PopulationTooSmall(usize),

    #[error("sample size must satisfy {min} <= n <= {max}, got n={n} (N={pop_size})")]
    SampleSize {
        n: usize,
        pop_size: usize,
        min: usize,
        max: usize,
    },

    #[error("range endpoints must be finite with a <= b, got a={low}, b={high}")]
    Range { low: f64, high: f64 },

    #[error("variance must lie in [0, (b-a)^2/4 = {max}], got {value}")]
    Variance { value: f64, max: f64 },

    #[error("this bound needs the population variance, but none was supplied")]
    MissingVariance,

    #[error("epsilon must be finite and nonnegative, got {0}")]
    Epsilon(f64),

    #[error("delta must lie in {interval}, got {value}")]
    Delta { value: f64, interval: &'static str },

    #[error("{name} must be finite and {requirement}, got {value}")]
    Argument {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("population values must be finite")]
    NonFiniteValue,

    #[error("empty input")]
    Empty,

    #[error("enumeration budget exceeded: {what} needs {needed} cases, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
}
