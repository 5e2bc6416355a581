//! Error type shared by all estimation routines.

use thiserror::Error;

/// Errors raised by construction, estimation, and I/O routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty series")]
    EmptySeries,

    #[error("series too short: n = {n}, need n >= {min}")]
    TooShort { n: usize, min: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("bandwidth too small for degree: m = {m}, need at least {min}")]
    BandwidthTooSmall { m: usize, min: usize },

    #[error("delta too large: boundary bands overlap (2m = {two_m} > {half})")]
    DeltaTooLarge { two_m: usize, half: usize },

    #[error("frequency {w} is not a Fourier frequency for n = {n}")]
    NotFourierFrequency { w: f64, n: usize },

    #[error("singular design matrix (condition number {condition:.3e})")]
    SingularDesign { condition: f64 },

    #[error("rank-deficient regression basis")]
    RankDeficientBasis,

    #[error("segment too short: length {len}, need at least 2")]
    SegmentTooShort { len: usize },

    #[error("zero-variance series: sample autocovariance at lag 0 is zero")]
    ZeroVariance,

    #[error("too few usable ordinates: {kept} left after dropping {dropped}, need {min}")]
    TooFewOrdinates {
        kept: usize,
        dropped: usize,
        min: usize,
    },

    #[error("AR spectrum unstable: characteristic root within {tol:.1e} of the unit circle")]
    UnstableArSpectrum { tol: f64 },

    #[error("nonpositive long-run variance estimate ({value}); use a positive variant")]
    NonpositiveLongRunVariance { value: f64 },

    #[error("degenerate estimate: blend integral is zero")]
    DegenerateEstimate,

    #[error("no feasible bandwidth fraction: n = {n} admits no delta with m >= {min_m}")]
    NoFeasibleDelta { n: usize, min_m: usize },

    #[error("estimator `{method}` failed on {failed} of {reps} replications (limit {limit})")]
    TooManyFailures {
        method: String,
        failed: usize,
        reps: usize,
        limit: usize,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv parse error: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether this error stems from bad inputs/configuration rather than a
    /// numerical failure encountered during computation. Used by the CLI to
    /// pick exit codes.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::EmptySeries
                | Error::TooShort { .. }
                | Error::NonFinite { .. }
                | Error::LengthMismatch { .. }
                | Error::InvalidParam { .. }
                | Error::BandwidthTooSmall { .. }
                | Error::DeltaTooLarge { .. }
                | Error::NotFourierFrequency { .. }
                | Error::SegmentTooShort { .. }
                | Error::Csv(_)
        )
    }
}
