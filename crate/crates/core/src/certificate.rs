//! The numerical decision procedure for orbit summability.
//!
//! A trace cannot prove that an infinite series converges, so the verdict is
//! three-valued and INCONCLUSIVE is a first-class outcome. The one checkable
//! ground truth is the freshly recomputed fixed-point residual at the limit
//! estimate; CONVERGED is only issued when that recheck passes and a finite
//! geometric tail bound exists.

use crate::error::{Error, Result};
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::orbit::{fixed_point_residual, OrbitTrace, StopReason};
use crate::scalar::Scalar;

/// Slack under 1 at which a windowed ratio counts as "not shrinking".
const DIVERGENCE_RATIO_SLACK: f64 = 1e-9;

/// Three-valued certification verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    Divergent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Converged => "CONVERGED",
            Verdict::Divergent => "DIVERGENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Decision thresholds for `certify`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyPolicy<T> {
    /// How many trailing ratios feed the geometric estimates.
    pub ratio_window: usize,
    /// Largest windowed ratio trusted for geometric tail extrapolation.
    pub ratio_ceiling: T,
    pub residual_tol: T,
}

impl<T: Scalar> Default for CertifyPolicy<T> {
    fn default() -> Self {
        Self {
            ratio_window: 8,
            ratio_ceiling: T::from_f64(0.999),
            residual_tol: T::from_f64(1e-10),
        }
    }
}

impl<T: Scalar> CertifyPolicy<T> {
    pub fn validate(&self) -> Result<()> {
        if self.ratio_window < 2 {
            return Err(Error::InvalidPolicy {
                reason: "ratio_window must be at least 2",
            });
        }
        if !(self.ratio_ceiling > T::zero() && self.ratio_ceiling < T::one()) {
            return Err(Error::InvalidPolicy {
                reason: "ratio_ceiling must lie strictly inside (0, 1)",
            });
        }
        if !(self.residual_tol > T::zero()) {
            return Err(Error::InvalidPolicy {
                reason: "residual_tol must be positive",
            });
        }
        Ok(())
    }
}

/// Outcome of certifying one orbit trace.
#[derive(Debug, Clone)]
pub struct SummabilityCertificate<T> {
    pub verdict: Verdict,
    /// Final partial displacement sum of the trace.
    pub total_displacement: T,
    /// Conservative geometric tail estimate `seed * r / (1 - r)` using the
    /// worst (largest) trailing ratio, where the seed is the run's terminal
    /// stop quantity (the final gap for autonomous orbits); zero when the
    /// seed is zero.
    pub tail_bound: Option<T>,
    /// Largest defined ratio in the trailing window.
    pub ratio_estimate: Option<T>,
    /// Final iterate, present only on CONVERGED.
    pub limit_estimate: Option<Point<T>>,
    /// Freshly recomputed `d(p, f(p))` at the limit estimate.
    pub residual: Option<T>,
    /// Which rule fired and with what numbers.
    pub evidence: String,
}

const LSC_NOTE: &str =
    "gap lower semicontinuity is assumed, not verified (all built-in map families are continuous)";

/// Applies the verdict rules to a finished trace.
///
/// Rules, in order: (a) CONVERGED when the run stopped on a zero/small gap
/// and the independently recomputed residual at the final iterate is within
/// tolerance, with a finite geometric tail bound; (b) DIVERGENT when the
/// displacement budget was exceeded while trailing gaps stayed at or above
/// tolerance with a windowed ratio at 1 or above; (c) INCONCLUSIVE otherwise.
pub fn certify<T: Scalar>(
    trace: &OrbitTrace<T>,
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    policy: &CertifyPolicy<T>,
) -> Result<SummabilityCertificate<T>> {
    policy.validate()?;
    let total = trace.total_displacement();
    let ratio_estimate = trace.windowed_max_ratio(policy.ratio_window);
    let final_gap = trace.final_gap().unwrap_or_else(T::zero);
    // Seed for the geometric tail: the run's terminal stop quantity. For a
    // plain autonomous orbit that is exactly the final gap; schedule-aware
    // drivers measure their residual at the final point before stepping.
    let tail_seed = trace.terminal_residual.unwrap_or(final_gap);

    // Geometric tail extrapolation from the worst trailing ratio.
    let tail_bound = if tail_seed == T::zero() {
        Some(T::zero())
    } else {
        match ratio_estimate {
            Some(r) if r <= policy.ratio_ceiling => Some(tail_seed * r / (T::one() - r)),
            _ => None,
        }
    };

    let stopped_converged = matches!(
        trace.stop,
        StopReason::GapExactlyZero | StopReason::ResidualBelowTol
    );

    if stopped_converged {
        let limit = trace.final_iterate();
        let fresh = fixed_point_residual(map, metric, limit)?;
        if fresh <= policy.residual_tol {
            match tail_bound {
                Some(tail) => {
                    return Ok(SummabilityCertificate {
                        verdict: Verdict::Converged,
                        total_displacement: total,
                        tail_bound: Some(tail),
                        ratio_estimate,
                        limit_estimate: Some(limit.clone()),
                        residual: Some(fresh),
                        evidence: format!(
                            "terminated {}; recomputed residual {fresh:e} <= {:e}; \
                             geometric tail bound {tail:e}; {LSC_NOTE}",
                            trace.stop, policy.residual_tol
                        ),
                    });
                }
                None => {
                    return Ok(SummabilityCertificate {
                        verdict: Verdict::Inconclusive,
                        total_displacement: total,
                        tail_bound: None,
                        ratio_estimate,
                        limit_estimate: None,
                        residual: None,
                        evidence: format!(
                            "terminated {} with residual {fresh:e} within tolerance, but the \
                             windowed ratio {} exceeds the ceiling {:e}, so no finite geometric \
                             tail bound is available; {LSC_NOTE}",
                            trace.stop,
                            ratio_estimate
                                .map(|r| format!("{r:e}"))
                                .unwrap_or_else(|| "(undefined)".into()),
                            policy.ratio_ceiling
                        ),
                    });
                }
            }
        }
        return Ok(SummabilityCertificate {
            verdict: Verdict::Inconclusive,
            total_displacement: total,
            tail_bound,
            ratio_estimate,
            limit_estimate: None,
            residual: None,
            evidence: format!(
                "terminated {} but the recomputed residual {fresh:e} exceeds {:e}; {LSC_NOTE}",
                trace.stop, policy.residual_tol
            ),
        });
    }

    if trace.stop == StopReason::DisplacementBudgetExceeded {
        let min_gap = trace.windowed_min_gap(policy.ratio_window);
        let near_one = T::one() - T::from_f64(DIVERGENCE_RATIO_SLACK);
        if let (Some(min_gap), Some(r)) = (min_gap, ratio_estimate) {
            if min_gap >= policy.residual_tol && r >= near_one {
                return Ok(SummabilityCertificate {
                    verdict: Verdict::Divergent,
                    total_displacement: total,
                    tail_bound: None,
                    ratio_estimate,
                    limit_estimate: None,
                    residual: None,
                    evidence: format!(
                        "displacement budget exceeded with gaps bounded below: trailing min gap \
                         {min_gap:e} >= {:e} and windowed ratio {r} >= 1 - {slack:e}; {LSC_NOTE}",
                        policy.residual_tol,
                        slack = DIVERGENCE_RATIO_SLACK
                    ),
                });
            }
        }
    }

    Ok(SummabilityCertificate {
        verdict: Verdict::Inconclusive,
        total_displacement: total,
        tail_bound,
        ratio_estimate,
        limit_estimate: None,
        residual: None,
        evidence: format!(
            "no rule fired: terminated {}, final gap {final_gap:e}, total displacement {total:e}, \
             windowed ratio {}; {LSC_NOTE}",
            trace.stop,
            ratio_estimate
                .map(|r| format!("{r:e}"))
                .unwrap_or_else(|| "(undefined)".into()),
        ),
    })
}
