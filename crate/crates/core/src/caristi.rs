//! Caristi potentials: the inequality `d(x, f(x)) <= phi(x) - phi(f(x))`
//! checked along orbits, the telescoped displacement bound `phi(x0) - m`,
//! and the canonical orbit potential built by truncating the gap series.
//!
//! Verification is orbit-local by design: the inequality is checked at the
//! iterates of one start point, never quantified over the whole space.

use crate::error::{Error, Result};
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::scalar::Scalar;

/// How to truncate the orbit-potential series.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPolicy<T> {
    pub max_terms: usize,
    /// Stop after the first term at or below this threshold.
    pub term_tol: T,
    /// Trailing ratios used for the geometric tail estimate.
    pub ratio_window: usize,
}

impl<T: Scalar> Default for TruncationPolicy<T> {
    fn default() -> Self {
        Self {
            max_terms: 10_000,
            term_tol: T::from_f64(1e-12),
            ratio_window: 8,
        }
    }
}

impl<T: Scalar> TruncationPolicy<T> {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::InvalidOptions {
                reason: "orbit potential needs max_terms >= 1",
            });
        }
        if !(self.term_tol >= T::zero()) {
            return Err(Error::InvalidOptions {
                reason: "term_tol must be nonnegative",
            });
        }
        if self.ratio_window < 2 {
            return Err(Error::InvalidOptions {
                reason: "ratio_window must be at least 2",
            });
        }
        Ok(())
    }
}

/// Extended-real potential `phi : R^d -> (-inf, +inf]` with a declared lower
/// bound `m` and a declared point where it is finite.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKind<T> {
    /// `phi(x) = slope * x` on the line.
    LinearScalar { slope: T },
    /// `phi(x) = scale * d(x, target)`.
    ScaledDistanceToPoint { target: Point<T>, scale: T },
    /// The canonical potential `phi_f(x) = sum_n d(f^n x, f^{n+1} x)`,
    /// truncated per policy.
    OrbitPotential {
        map: Box<MapSpec<T>>,
        trunc: TruncationPolicy<T>,
    },
    /// Finite support; `+inf` everywhere else. Lookup is by exact coordinates.
    Table { entries: Vec<(Point<T>, T)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec<T> {
    pub kind: PotentialKind<T>,
    /// The declared `m = inf phi`, required finite.
    pub declared_lower_bound: T,
    /// A point where the potential is declared (and checked) finite.
    pub proper_witness: Point<T>,
}

impl<T: Scalar> PotentialSpec<T> {
    /// Checks the declared lower bound and the proper witness.
    pub fn validate(&self, metric: &MetricSpec<T>, tol: T) -> Result<()> {
        if !self.declared_lower_bound.is_finite() {
            return Err(Error::UnboundedPotential);
        }
        let at_witness = eval_potential(self, metric, &self.proper_witness, tol)?;
        if at_witness == T::infinity() {
            return Err(Error::ImproperPotential);
        }
        Ok(())
    }
}

/// Evaluates the potential; the result is finite or `+inf`, never `-inf`.
///
/// A finite value more than `tol` below the declared lower bound means the
/// declared `m` was wrong and is reported as an inconsistency error.
pub fn eval_potential<T: Scalar>(
    phi: &PotentialSpec<T>,
    metric: &MetricSpec<T>,
    x: &Point<T>,
    tol: T,
) -> Result<T> {
    let value = match &phi.kind {
        PotentialKind::LinearScalar { slope } => {
            if x.dim() != 1 {
                return Err(Error::DimensionMismatch {
                    left: x.dim(),
                    right: 1,
                });
            }
            *slope * x[0]
        }
        PotentialKind::ScaledDistanceToPoint { target, scale } => {
            *scale * metric.distance(x, target)?
        }
        PotentialKind::OrbitPotential { map, trunc } => orbit_potential(map, metric, x, trunc)?.value,
        PotentialKind::Table { entries } => entries
            .iter()
            .find(|(p, _)| p == x)
            .map(|(_, v)| *v)
            .unwrap_or_else(T::infinity),
    };
    if value == T::neg_infinity() || value.is_nan() {
        return Err(Error::PotentialBelowBound {
            value: format!("{value}"),
            bound: format!("{}", phi.declared_lower_bound),
        });
    }
    if value != T::infinity() && value < phi.declared_lower_bound - tol {
        return Err(Error::PotentialBelowBound {
            value: format!("{value}"),
            bound: format!("{}", phi.declared_lower_bound),
        });
    }
    Ok(value)
}

/// One Caristi step check: `phi(x) - phi(f(x)) - d(x, f(x))`.
///
/// Nonnegative (within `-tol`) exactly when Caristi's inequality holds at `x`.
/// Refuses with an error when `phi(x) = +inf` rather than treating the
/// inequality as vacuous.
pub fn check_caristi_step<T: Scalar>(
    phi: &PotentialSpec<T>,
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    x: &Point<T>,
    tol: T,
) -> Result<T> {
    let at_x = eval_potential(phi, metric, x, tol)?;
    if at_x == T::infinity() {
        return Err(Error::PotentialInfinite);
    }
    let fx = map.eval(x)?;
    let at_fx = eval_potential(phi, metric, &fx, tol)?;
    let gap = metric.distance(x, &fx)?;
    // phi(f(x)) = +inf makes the inequality fail with slack -inf.
    Ok(at_x - at_fx - gap)
}

/// Verdict of checking Caristi's inequality along the first `N` orbit steps.
#[derive(Debug, Clone)]
pub struct CaristiReport<T> {
    pub steps_checked: usize,
    /// `slacks[j] = phi(x_j) - phi(x_{j+1}) - d(x_j, x_{j+1})`.
    pub slacks: Vec<T>,
    pub min_slack: T,
    /// `phi(x_0) - declared_lower_bound`, the telescoped displacement bound.
    pub telescoped_bound: T,
    /// True when every slack is at least `-tol`.
    pub holds: bool,
    /// Gap sum over the checked steps.
    pub gap_sum: T,
    /// Set when the potential hit `+inf` at step `j + 1`; the failing step
    /// records a `-inf` slack and checking stops there.
    pub truncated_at: Option<usize>,
    /// When `holds`, confirms `gap_sum <= telescoped_bound + N * tol`.
    pub telescoping_verified: bool,
}

/// Checks Caristi's inequality at `x_0, f(x_0), ..., f^{N-1}(x_0)`.
pub fn verify_along_orbit<T: Scalar>(
    phi: &PotentialSpec<T>,
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    x0: &Point<T>,
    steps: usize,
    tol: T,
) -> Result<CaristiReport<T>> {
    if steps < 1 {
        return Err(Error::InvalidOptions {
            reason: "Caristi verification needs at least one step",
        });
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidOptions {
            reason: "Caristi tolerance must be positive",
        });
    }
    phi.validate(metric, tol)?;
    let phi_x0 = eval_potential(phi, metric, x0, tol)?;
    if phi_x0 == T::infinity() {
        return Err(Error::PotentialInfinite);
    }

    let mut slacks = Vec::with_capacity(steps);
    let mut gap_sum = T::zero();
    let mut truncated_at = None;
    let mut current = x0.clone();
    let mut phi_current = phi_x0;
    for j in 0..steps {
        let next = map
            .eval(&current)
            .map_err(|e| match e {
                Error::EvalOverflow => Error::OrbitOverflow { step: j },
                other => other,
            })?;
        let gap = metric.distance(&current, &next)?;
        let phi_next = eval_potential(phi, metric, &next, tol)?;
        gap_sum = gap_sum + gap;
        slacks.push(phi_current - phi_next - gap);
        if phi_next == T::infinity() {
            // The inequality already failed with slack -inf; no further step
            // can start from an infinite potential value.
            truncated_at = Some(j);
            break;
        }
        current = next;
        phi_current = phi_next;
    }

    let min_slack = slacks
        .iter()
        .copied()
        .fold(T::infinity(), T::min);
    let holds = min_slack >= -tol;
    let telescoped_bound = phi_x0 - phi.declared_lower_bound;
    let n_scalar = T::from_usize(slacks.len());
    let telescoping_verified = holds && gap_sum <= telescoped_bound + n_scalar * tol;
    Ok(CaristiReport {
        steps_checked: slacks.len(),
        slacks,
        min_slack,
        telescoped_bound,
        holds,
        gap_sum,
        truncated_at,
        telescoping_verified,
    })
}

/// Truncated value of the canonical orbit potential at `x`.
#[derive(Debug, Clone)]
pub struct OrbitPotentialValue<T> {
    /// `sum_{n < K} d(f^n x, f^{n+1} x)` for the first `K` computed terms.
    pub value: T,
    pub terms_used: usize,
    /// Geometric tail estimate from the trailing windowed ratio when it is
    /// below 1; absent otherwise.
    pub truncation_error_bound: Option<T>,
    /// True when the series visibly converged: a term dropped to `term_tol`
    /// (or to exactly zero) with a contracting trailing ratio.
    pub converged: bool,
}

/// Sums the gap series at `x` under the truncation policy.
pub fn orbit_potential<T: Scalar>(
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    x: &Point<T>,
    trunc: &TruncationPolicy<T>,
) -> Result<OrbitPotentialValue<T>> {
    trunc.validate()?;
    let mut current = x.clone();
    let mut value = T::zero();
    let mut terms: Vec<T> = Vec::new();
    let mut stopped_early = false;
    for step in 0..trunc.max_terms {
        let next = map.eval(&current).map_err(|e| match e {
            Error::EvalOverflow => Error::OrbitOverflow { step },
            other => other,
        })?;
        let term = metric.distance(&current, &next)?;
        value = value + term;
        terms.push(term);
        current = next;
        if term <= trunc.term_tol {
            stopped_early = true;
            break;
        }
    }

    let last_term = terms.last().copied().unwrap_or_else(T::zero);
    let window_ratio = {
        let mut max_ratio: Option<T> = None;
        for pair in terms.windows(2).rev().take(trunc.ratio_window) {
            if pair[0] > T::zero() {
                let r = pair[1] / pair[0];
                max_ratio = Some(match max_ratio {
                    Some(m) => m.max(r),
                    None => r,
                });
            }
        }
        max_ratio
    };

    let truncation_error_bound = if last_term == T::zero() {
        Some(T::zero())
    } else {
        match window_ratio {
            Some(r) if r < T::one() => Some(last_term * r / (T::one() - r)),
            _ => None,
        }
    };
    let converged = stopped_early && truncation_error_bound.is_some();
    Ok(OrbitPotentialValue {
        value,
        terms_used: terms.len(),
        truncation_error_bound,
        converged,
    })
}

/// Residual of the re-indexing identity
/// `phi_f(x) = d(x, f(x)) + phi_f(f(x))`, computed with aligned truncations.
///
/// Both series must converge under the given policy; the residual is bounded
/// by the two truncation tails plus rounding.
pub fn canonical_caristi_identity_check<T: Scalar>(
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    x: &Point<T>,
    trunc: &TruncationPolicy<T>,
) -> Result<T> {
    let at_x = orbit_potential(map, metric, x, trunc)?;
    if !at_x.converged {
        return Err(Error::OrbitPotentialDiverged);
    }
    let fx = map.eval(x)?;
    let at_fx = orbit_potential(map, metric, &fx, trunc)?;
    if !at_fx.converged {
        return Err(Error::OrbitPotentialDiverged);
    }
    let gap = metric.distance(x, &fx)?;
    Ok((at_x.value - at_fx.value - gap).abs())
}
