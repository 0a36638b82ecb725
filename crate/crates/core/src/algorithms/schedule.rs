//! Relaxation sequences `(alpha_n)` strictly inside `(0, 1)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum RelaxationSchedule<T> {
    Constant(T),
    /// `alpha_n = alpha / (n + 1)`.
    Harmonic { alpha: T },
    /// Finite explicit list; exhausting it mid-run is an error.
    Explicit(Vec<T>),
}

impl<T: Scalar> RelaxationSchedule<T> {
    pub fn validate(&self) -> Result<()> {
        let check = |a: &T| -> Result<()> {
            if !a.is_finite() || *a <= T::zero() || *a >= T::one() {
                return Err(Error::InvalidAlpha {
                    value: format!("{a}"),
                });
            }
            Ok(())
        };
        match self {
            RelaxationSchedule::Constant(a) => check(a),
            // alpha/(n+1) stays in (0,1) for all n once alpha does.
            RelaxationSchedule::Harmonic { alpha } => check(alpha),
            RelaxationSchedule::Explicit(values) => {
                if values.is_empty() {
                    return Err(Error::InvalidParameter {
                        reason: "explicit schedule must be nonempty".into(),
                    });
                }
                values.iter().try_for_each(check)
            }
        }
    }

    /// `alpha_n`, or `None` when an explicit list has run out.
    pub fn alpha_at(&self, n: usize) -> Option<T> {
        match self {
            RelaxationSchedule::Constant(a) => Some(*a),
            RelaxationSchedule::Harmonic { alpha } => Some(*alpha / T::from_usize(n + 1)),
            RelaxationSchedule::Explicit(values) => values.get(n).copied(),
        }
    }
}
