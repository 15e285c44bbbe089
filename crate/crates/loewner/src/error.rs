use thiserror::Error;

/// Errors produced by the zipper, the elementary maps and the statistics.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate slit tip: im = {im:e} (tip must lie strictly above the real axis)")]
    DegenerateTip { im: f64 },

    #[error("ill-conditioned slit: alpha = {alpha:e} is too close to 0 or 1")]
    IllConditionedSlit { alpha: f64 },

    #[error("point lies on the slit")]
    PointOnSlit,

    #[error("inverse iteration did not converge (residual {residual:e}); discretization may be too coarse near the tip")]
    NonConvergence { residual: f64 },

    #[error("map failure at curve point {index}: {source}")]
    MapFailure {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("curve self-intersects numerically at point {index} (image tip im = {im:e})")]
    SelfIntersection { index: usize, im: f64 },

    #[error("invalid curve: {reason}")]
    InvalidCurve { reason: String },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series must have leading coefficient 1, got {a1}")]
    BadLeadingCoefficient { a1: f64 },

    #[error("empty sample set")]
    EmptySample,

    #[error("sample length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("time {t} outside driving function range [0, {t_max}]")]
    TimeOutOfRange { t: f64, t_max: f64 },

    #[error("capacity horizon {t_max} exceeds curve capacity {reached}")]
    HorizonBeyondCapacity { t_max: f64, reached: f64 },

    #[error("degenerate statistics input: {reason}")]
    DegenerateInput { reason: String },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    #[error("walk generation exceeded the safety cap of {cap} raw steps")]
    StepCapExceeded { cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach the index of the curve point being processed.
    pub(crate) fn at_index(self, index: usize) -> Error {
        Error::MapFailure {
            index,
            source: Box::new(self),
        }
    }
}
