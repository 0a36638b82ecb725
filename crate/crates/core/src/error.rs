//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building specs or running orbits.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("a point needs at least one coordinate")]
    EmptyPoint,

    #[error("non-finite coordinate at index {index}")]
    NonFiniteCoordinate { index: usize },

    #[error("weighted metric: {reason}")]
    InvalidWeights { reason: String },

    #[error("map evaluation produced a non-finite coordinate")]
    EvalOverflow,

    #[error("orbit overflowed to a non-finite value at iteration {step}")]
    OrbitOverflow { step: usize },

    #[error("relaxation parameter alpha={value} must lie strictly inside (0, 1)")]
    InvalidAlpha { value: String },

    #[error("contraction modulus c={value} must lie in [0, 1)")]
    InvalidModulus { value: String },

    #[error(
        "map declared strong-contraction({declared}) but the observed gap ratio {observed} at step {step} exceeds it"
    )]
    MisdeclaredContraction {
        declared: String,
        observed: String,
        step: usize,
    },

    #[error("map carries no strong-contraction classification")]
    NotAContraction,

    #[error("affine map needs a square matrix matching the offset: {rows} rows, {cols} cols, offset length {offset}")]
    InvalidAffine {
        rows: usize,
        cols: usize,
        offset: usize,
    },

    #[error("gap index range [{n}, {m}) is invalid for a trace with {len} gaps")]
    GapIndexOutOfRange { n: usize, m: usize, len: usize },

    #[error("potential is +inf at the evaluation point; the Caristi step is not checkable there")]
    PotentialInfinite,

    #[error("potential evaluated to {value}, below its declared lower bound {bound}")]
    PotentialBelowBound { value: String, bound: String },

    #[error("potential must declare a finite lower bound")]
    UnboundedPotential,

    #[error("potential is +inf at its declared proper witness")]
    ImproperPotential,

    #[error("orbit potential did not converge within the requested truncation")]
    OrbitPotentialDiverged,

    #[error("invalid convex set: {reason}")]
    InvalidSet { reason: String },

    #[error("invalid proximal operator: {reason}")]
    InvalidProx { reason: String },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    #[error("relaxation schedule exhausted at step {step}")]
    ScheduleExhausted { step: usize },

    #[error("this operation requires the Euclidean metric")]
    EuclideanRequired,

    #[error("invalid run options: {reason}")]
    InvalidOptions { reason: &'static str },

    #[error("invalid certification policy: {reason}")]
    InvalidPolicy { reason: &'static str },

    #[error("orbit trace is empty")]
    EmptyTrace,
}
