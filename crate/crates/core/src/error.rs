use std::path::PathBuf;

/// Errors raised by the simulator and optimizer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zero distance between link endpoints: pathloss is singular")]
    ZeroDistance,

    #[error("reference large-scale coefficient must be positive, got {0}")]
    NonPositiveBeta(f64),

    #[error("precoder for DL user {0} has zero norm")]
    ZeroPrecoder(usize),

    #[error("combiner for UL user {0} has zero norm")]
    ZeroCombiner(usize),

    #[error("repeater input power plus noise is zero: amplification is unbounded")]
    UnboundedGain,

    #[error("SINR must be non-negative, got {0}")]
    NegativeSinr(f64),

    #[error("rational SINR denominator is not positive ({0}) at r = {1}")]
    NonPositiveDenominator(f64, f64),

    #[error("{kind} index {index} out of range (count {count})")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        count: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("experiment needs at least one trial")]
    NoTrials,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
