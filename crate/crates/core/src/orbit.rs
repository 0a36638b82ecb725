//! Forward-orbit driver: gap sequences, partial displacement sums, Cauchy
//! bounds and the fixed-point residual.
//!
//! For a self-map `f` and start point `x`, the orbit is `x_n = f^n(x)`; the
//! n-th gap is `d(x_n, x_{n+1})` and the partial sums accumulate the total
//! displacement. Everything downstream (certificates, Caristi checks, the
//! algorithm drivers) is built on the trace this module produces.

use crate::error::{Error, Result};
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::scalar::Scalar;

/// Why an orbit run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The last gap was exactly zero: the orbit landed on a fixed point.
    GapExactlyZero,
    /// The stop quantity dropped to or below the residual tolerance.
    ResidualBelowTol,
    /// The running displacement sum exceeded the budget.
    DisplacementBudgetExceeded,
    /// The iteration cap was reached first.
    MaxIterations,
    /// The map overflowed to a non-finite value; the trace holds every
    /// completed step before the failure.
    NumericOverflow,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::GapExactlyZero => "gap-exactly-zero",
            StopReason::ResidualBelowTol => "residual-below-tol",
            StopReason::DisplacementBudgetExceeded => "displacement-budget-exceeded",
            StopReason::MaxIterations => "max-iterations",
            StopReason::NumericOverflow => "numeric-overflow",
        }
    }
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Knobs for a single orbit run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions<T> {
    pub max_iters: usize,
    pub residual_tol: T,
    pub displacement_budget: T,
    /// Keep iterate `x_n` when `n` is a multiple of the stride (the final
    /// iterate is always kept). Gaps and partial sums are never thinned.
    pub thinning_stride: usize,
}

impl<T: Scalar> Default for RunOptions<T> {
    fn default() -> Self {
        Self {
            max_iters: 100_000,
            residual_tol: T::from_f64(1e-10),
            displacement_budget: T::from_f64(1e6),
            thinning_stride: 1,
        }
    }
}

impl<T: Scalar> RunOptions<T> {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::InvalidOptions {
                reason: "max_iters must be at least 1",
            });
        }
        if !(self.residual_tol > T::zero()) || !self.residual_tol.is_finite() {
            return Err(Error::InvalidOptions {
                reason: "residual_tol must be positive and finite",
            });
        }
        if !(self.displacement_budget > T::zero()) {
            return Err(Error::InvalidOptions {
                reason: "displacement_budget must be positive",
            });
        }
        if self.thinning_stride == 0 {
            return Err(Error::InvalidOptions {
                reason: "thinning_stride must be at least 1",
            });
        }
        Ok(())
    }
}

/// The record of one orbit run.
///
/// `gaps`, `partial_sums`, `ratios` and `residuals` are always at full
/// resolution; `iterates` may be thinned but always retains the start and the
/// final point.
#[derive(Debug, Clone)]
pub struct OrbitTrace<T> {
    iterate_steps: Vec<usize>,
    iterates: Vec<Point<T>>,
    /// `gaps[n] = d(x_n, x_{n+1})`.
    pub gaps: Vec<T>,
    /// `partial_sums[n] = partial_sums[n-1] + gaps[n]`, in that exact order.
    pub partial_sums: Vec<T>,
    /// `ratios[n] = gaps[n+1] / gaps[n]`, absent where `gaps[n]` is zero.
    pub ratios: Vec<Option<T>>,
    /// The run's stop quantity at `x_n` (for an autonomous orbit this equals
    /// the gap; the algorithm drivers record their own residual).
    pub residuals: Vec<T>,
    /// Stop quantity measured at the final point, for drivers that decide
    /// termination before taking a step (KM, alternating projections). Absent
    /// for plain orbit runs, where the final gap plays this role.
    pub terminal_residual: Option<T>,
    pub stop: StopReason,
}

impl<T: Scalar> OrbitTrace<T> {
    /// Number of recorded steps (gaps).
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Final partial sum; zero for a step-free trace.
    pub fn total_displacement(&self) -> T {
        self.partial_sums.last().copied().unwrap_or_else(T::zero)
    }

    pub fn final_gap(&self) -> Option<T> {
        self.gaps.last().copied()
    }

    pub fn initial_iterate(&self) -> &Point<T> {
        &self.iterates[0]
    }

    pub fn final_iterate(&self) -> &Point<T> {
        self.iterates.last().expect("trace retains the final iterate")
    }

    /// The retained iterate with orbit index `step`, when it was kept.
    pub fn iterate_at(&self, step: usize) -> Option<&Point<T>> {
        self.iterate_steps
            .binary_search(&step)
            .ok()
            .map(|i| &self.iterates[i])
    }

    /// Retained `(orbit index, point)` pairs in order.
    pub fn retained_iterates(&self) -> impl Iterator<Item = (usize, &Point<T>)> {
        self.iterate_steps.iter().copied().zip(self.iterates.iter())
    }

    /// Max-ratio estimate over the trailing `window` defined ratios.
    pub fn windowed_max_ratio(&self, window: usize) -> Option<T> {
        let defined: Vec<T> = self.ratios.iter().rev().take(window).filter_map(|r| *r).collect();
        defined.into_iter().reduce(T::max)
    }

    /// Smallest gap among the trailing `window` gaps.
    pub fn windowed_min_gap(&self, window: usize) -> Option<T> {
        self.gaps.iter().rev().take(window).copied().reduce(T::min)
    }
}

/// Accumulates a trace step by step; shared by the orbit driver and the
/// schedule-aware algorithm drivers.
pub(crate) struct TraceBuilder<T> {
    opts_stride: usize,
    iterate_steps: Vec<usize>,
    iterates: Vec<Point<T>>,
    gaps: Vec<T>,
    partial_sums: Vec<T>,
    ratios: Vec<Option<T>>,
    residuals: Vec<T>,
    current: Point<T>,
    current_step: usize,
}

impl<T: Scalar> TraceBuilder<T> {
    pub(crate) fn new(x0: Point<T>, stride: usize) -> Self {
        Self {
            opts_stride: stride.max(1),
            iterate_steps: vec![0],
            iterates: vec![x0.clone()],
            gaps: Vec::new(),
            partial_sums: Vec::new(),
            ratios: Vec::new(),
            residuals: Vec::new(),
            current: x0,
            current_step: 0,
        }
    }

    pub(crate) fn current(&self) -> &Point<T> {
        &self.current
    }

    pub(crate) fn running_total(&self) -> T {
        self.partial_sums.last().copied().unwrap_or_else(T::zero)
    }

    /// Records the step to `next` with the given gap and stop-quantity residual.
    pub(crate) fn record(&mut self, next: Point<T>, gap: T, residual: T) {
        if let Some(&prev) = self.gaps.last() {
            let ratio = if prev > T::zero() {
                Some(gap / prev)
            } else {
                None
            };
            self.ratios.push(ratio);
        }
        let total = self.running_total() + gap;
        self.gaps.push(gap);
        self.partial_sums.push(total);
        self.residuals.push(residual);
        self.current_step += 1;
        self.current = next;
        if self.current_step % self.opts_stride == 0 {
            self.iterate_steps.push(self.current_step);
            self.iterates.push(self.current.clone());
        }
    }

    pub(crate) fn finish(mut self, stop: StopReason, terminal_residual: Option<T>) -> OrbitTrace<T> {
        if *self.iterate_steps.last().expect("start retained") != self.current_step {
            self.iterate_steps.push(self.current_step);
            self.iterates.push(self.current.clone());
        }
        OrbitTrace {
            iterate_steps: self.iterate_steps,
            iterates: self.iterates,
            gaps: self.gaps,
            partial_sums: self.partial_sums,
            ratios: self.ratios,
            residuals: self.residuals,
            terminal_residual,
            stop,
        }
    }
}

/// Runs the forward orbit of `map` from `x0`.
///
/// Stops at the first of: gap exactly zero, gap at or below `residual_tol`,
/// partial sum strictly above the displacement budget, or `max_iters` steps.
/// Overflow mid-run returns the trace built so far, flagged
/// `NumericOverflow`, rather than an error.
pub fn run_orbit<T: Scalar>(
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    x0: &Point<T>,
    opts: &RunOptions<T>,
) -> Result<OrbitTrace<T>> {
    opts.validate()?;
    metric.validate_for_dim(x0.dim())?;
    map.validate(x0.dim())?;
    let mut builder = TraceBuilder::new(x0.clone(), opts.thinning_stride);
    for _ in 0..opts.max_iters {
        let next = match map.eval(builder.current()) {
            Ok(p) => p,
            Err(Error::EvalOverflow) => return Ok(builder.finish(StopReason::NumericOverflow, None)),
            Err(e) => return Err(e),
        };
        let gap = metric.distance(builder.current(), &next)?;
        if !gap.is_finite() {
            // The points are finite but the distance computation overflowed.
            return Ok(builder.finish(StopReason::NumericOverflow, None));
        }
        // For an autonomous map the gap at x_n is the fixed-point residual
        // d(x_n, f(x_n)) itself.
        builder.record(next, gap, gap);
        if gap == T::zero() {
            return Ok(builder.finish(StopReason::GapExactlyZero, None));
        }
        if gap <= opts.residual_tol {
            return Ok(builder.finish(StopReason::ResidualBelowTol, None));
        }
        if builder.running_total() > opts.displacement_budget {
            return Ok(builder.finish(StopReason::DisplacementBudgetExceeded, None));
        }
    }
    Ok(builder.finish(StopReason::MaxIterations, None))
}

/// The n-th orbit gap `d(f^n(x), f^{n+1}(x))`.
pub fn orbit_gap<T: Scalar>(
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    x: &Point<T>,
    n: usize,
) -> Result<T> {
    let mut current = x.clone();
    for step in 0..n {
        current = map
            .eval(&current)
            .map_err(|e| wrap_overflow(e, step))?;
    }
    let next = map.eval(&current).map_err(|e| wrap_overflow(e, n))?;
    metric.distance(&current, &next)
}

fn wrap_overflow(e: Error, step: usize) -> Error {
    match e {
        Error::EvalOverflow => Error::OrbitOverflow { step },
        other => other,
    }
}

/// Triangle-inequality upper bound on `d(x_n, x_m)`: the gap sum over `[n, m)`.
pub fn cauchy_bound<T: Scalar>(trace: &OrbitTrace<T>, n: usize, m: usize) -> Result<T> {
    if n >= m || m > trace.gaps.len() {
        return Err(Error::GapIndexOutOfRange {
            n,
            m,
            len: trace.gaps.len(),
        });
    }
    Ok(trace.gaps[n..m].iter().copied().sum())
}

/// The fixed-point residual `d(p, f(p))`; zero exactly when `p` is fixed.
pub fn fixed_point_residual<T: Scalar>(
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    p: &Point<T>,
) -> Result<T> {
    let image = map.eval(p)?;
    metric.distance(p, &image)
}
