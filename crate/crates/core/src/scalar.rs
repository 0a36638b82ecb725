//! Scalar abstraction: the whole toolkit is generic over `f32`/`f64`.

use std::fmt;
use std::iter::Sum;

use num_traits::Float;

/// Floating-point scalar type the library is generic over.
///
/// Everything numeric (points, metrics, gap sequences, certificates) is
/// parameterised by this trait; `f64` is the configuration the CLI uses.
pub trait Scalar:
    Float + Sum<Self> + fmt::Debug + fmt::Display + fmt::LowerExp + Send + Sync + 'static
{
    /// Cast an `f64` literal (tolerances, defaults) into this scalar type.
    fn from_f64(v: f64) -> Self;
    /// Cast a count into this scalar type.
    fn from_usize(n: usize) -> Self;
}

impl Scalar for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn from_usize(n: usize) -> Self {
        n as f32
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_usize(n: usize) -> Self {
        n as f64
    }
}
