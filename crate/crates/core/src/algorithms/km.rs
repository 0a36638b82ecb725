//! Krasnosel'skii-Mann iteration `x_{n+1} = (1 - alpha_n) x_n + alpha_n T(x_n)`.
//!
//! The schedule may vary with `n`, so the orbit is non-autonomous and driven
//! here rather than through a single map spec; the certificate's residual is
//! evaluated against `T` itself, since fixed points of `T` are the target.

use crate::certificate::{certify, CertifyPolicy, SummabilityCertificate};
use crate::error::{Error, Result};
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::orbit::{OrbitTrace, RunOptions, StopReason, TraceBuilder};
use crate::scalar::Scalar;

use super::schedule::RelaxationSchedule;

/// One relaxed step `(1 - alpha) x + alpha T(x)`.
pub fn km_step<T: Scalar>(t: &MapSpec<T>, x: &Point<T>, alpha: T) -> Result<Point<T>> {
    if !alpha.is_finite() || alpha <= T::zero() || alpha >= T::one() {
        return Err(Error::InvalidAlpha {
            value: format!("{alpha}"),
        });
    }
    let tx = t.eval(x)?;
    average(x, &tx, alpha)
}

fn average<T: Scalar>(x: &Point<T>, tx: &Point<T>, alpha: T) -> Result<Point<T>> {
    let one_minus = T::one() - alpha;
    let out = x
        .coords()
        .iter()
        .zip(tx.coords())
        .map(|(&c, &tc)| one_minus * c + alpha * tc)
        .collect();
    Point::from_map_output(out)
}

/// Result of a schedule-driven KM run.
#[derive(Debug, Clone)]
pub struct KmRun<T> {
    pub trace: OrbitTrace<T>,
    /// Certificate of the generated orbit, with the residual re-checked
    /// against `T` (not the averaged step map).
    pub certificate: SummabilityCertificate<T>,
    /// `sum_n alpha_n ||T(x_n) - x_n||`, the summability functional. Equal to
    /// the trace's total displacement by the per-step gap identity.
    pub km_functional: T,
    /// Largest observed `|gap_n - alpha_n ||T(x_n) - x_n||| / (1 + ||x_n||)`.
    pub gap_identity_dev: T,
}

/// Drives the KM orbit until `||T(x_n) - x_n||` reaches the residual
/// tolerance (the stop quantity for this scheme), the displacement budget is
/// exceeded, or iterations run out.
pub fn km_run<T: Scalar>(
    t: &MapSpec<T>,
    x0: &Point<T>,
    schedule: &RelaxationSchedule<T>,
    metric: &MetricSpec<T>,
    opts: &RunOptions<T>,
    policy: &CertifyPolicy<T>,
) -> Result<KmRun<T>> {
    if !metric.is_euclidean() {
        return Err(Error::EuclideanRequired);
    }
    opts.validate()?;
    schedule.validate()?;
    t.validate(x0.dim())?;

    let mut builder = TraceBuilder::new(x0.clone(), opts.thinning_stride);
    let mut km_functional = T::zero();
    let mut gap_identity_dev = T::zero();
    let mut stop = StopReason::MaxIterations;
    let mut terminal_residual = None;
    for n in 0..opts.max_iters {
        let x = builder.current().clone();
        let tx = match t.eval(&x) {
            Ok(p) => p,
            Err(Error::EvalOverflow) => {
                stop = StopReason::NumericOverflow;
                break;
            }
            Err(e) => return Err(e),
        };
        let t_residual = metric.distance(&x, &tx)?;
        if !t_residual.is_finite() {
            stop = StopReason::NumericOverflow;
            break;
        }
        if t_residual == T::zero() {
            stop = StopReason::GapExactlyZero;
            terminal_residual = Some(t_residual);
            break;
        }
        if t_residual <= opts.residual_tol {
            stop = StopReason::ResidualBelowTol;
            terminal_residual = Some(t_residual);
            break;
        }
        let alpha = schedule
            .alpha_at(n)
            .ok_or(Error::ScheduleExhausted { step: n })?;
        if alpha <= T::zero() || alpha >= T::one() {
            return Err(Error::InvalidAlpha {
                value: format!("{alpha}"),
            });
        }
        let next = average(&x, &tx, alpha)?;
        let gap = metric.distance(&x, &next)?;
        // Exact identity: ||x_{n+1} - x_n|| = alpha_n ||T(x_n) - x_n||.
        let dev = (gap - alpha * t_residual).abs() / (T::one() + x.l2_norm());
        gap_identity_dev = gap_identity_dev.max(dev);
        km_functional = km_functional + alpha * t_residual;
        builder.record(next, gap, t_residual);
        if builder.running_total() > opts.displacement_budget {
            stop = StopReason::DisplacementBudgetExceeded;
            break;
        }
    }
    let trace = builder.finish(stop, terminal_residual);
    let certificate = certify(&trace, t, metric, policy)?;
    Ok(KmRun {
        trace,
        certificate,
        km_functional,
        gap_identity_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Verdict;

    fn p(coords: &[f64]) -> Point<f64> {
        Point::new(coords.to_vec()).unwrap()
    }

    fn euclid() -> MetricSpec<f64> {
        MetricSpec::Euclidean
    }

    #[test]
    fn km_step_midpoint_of_negation() {
        let out = km_step(&MapSpec::scale(-1.0), &p(&[2.0, -4.0]), 0.5).unwrap();
        assert_eq!(out.coords(), &[0.0, 0.0]);
    }

    #[test]
    fn km_step_preserves_fixed_points_of_identity() {
        let identity = MapSpec::scale(1.0);
        let x = p(&[1.5, -0.5]);
        for alpha in [0.1, 0.5, 0.9] {
            assert_eq!(km_step(&identity, &x, alpha).unwrap(), x);
        }
    }

    #[test]
    fn km_step_quarter_rotation_hand_value() {
        let rot = MapSpec::rotation_2d(std::f64::consts::FRAC_PI_2);
        let out = km_step(&rot, &p(&[1.0, 0.0]), 0.5).unwrap();
        assert!((out[0] - 0.5).abs() <= 1e-15);
        assert!((out[1] - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn km_step_rejects_boundary_alpha() {
        let map = MapSpec::scale(-1.0);
        for bad in [0.0, 1.0] {
            assert!(matches!(
                km_step(&map, &p(&[1.0]), bad),
                Err(Error::InvalidAlpha { .. })
            ));
        }
    }

    #[test]
    fn negation_collapses_in_one_step() {
        let run = km_run(
            &MapSpec::scale(-1.0),
            &p(&[3.0]),
            &RelaxationSchedule::Constant(0.5),
            &euclid(),
            &RunOptions::default(),
            &CertifyPolicy::default(),
        )
        .unwrap();
        assert_eq!(run.certificate.verdict, Verdict::Converged);
        assert_eq!(run.km_functional, 3.0); // 0.5 * ||(-3) - 3||
        assert_eq!(run.trace.total_displacement(), 3.0);
        assert_eq!(run.certificate.limit_estimate.as_ref().unwrap().coords(), &[0.0]);
    }

    #[test]
    fn identity_map_converges_at_the_start_with_zero_functional() {
        let run = km_run(
            &MapSpec::scale(1.0),
            &p(&[2.0, 2.0]),
            &RelaxationSchedule::Constant(0.25),
            &euclid(),
            &RunOptions::default(),
            &CertifyPolicy::default(),
        )
        .unwrap();
        assert_eq!(run.certificate.verdict, Verdict::Converged);
        assert_eq!(run.km_functional, 0.0);
        assert!(run.trace.is_empty());
        assert_eq!(run.trace.total_displacement(), 0.0);
    }

    #[test]
    fn quarter_rotation_gap_ratio_matches_averaged_modulus() {
        let opts = RunOptions {
            residual_tol: 1e-11,
            ..RunOptions::default()
        };
        let policy = CertifyPolicy {
            residual_tol: 1e-10,
            ..CertifyPolicy::default()
        };
        let run = km_run(
            &MapSpec::rotation_2d(std::f64::consts::FRAC_PI_2),
            &p(&[1.0, 0.0]),
            &RelaxationSchedule::Constant(0.5),
            &euclid(),
            &opts,
            &policy,
        )
        .unwrap();
        assert_eq!(run.certificate.verdict, Verdict::Converged);
        // Oracle: |(1 - alpha) + alpha e^{i theta}| for alpha = 0.5, theta = pi/2.
        let expected = (0.5f64 * 0.5 + 0.5 * 0.5).sqrt();
        let ratio = run.certificate.ratio_estimate.unwrap();
        assert!((ratio - expected).abs() <= 1e-6, "ratio {ratio}");
        // Identity holds to machine precision relative to scale.
        assert!(run.gap_identity_dev <= 1e-12);
        // Functional equals the accumulated displacement by the identity.
        let total = run.trace.total_displacement();
        assert!((run.km_functional - total).abs() <= 1e-10 * (1.0 + total));
    }

    #[test]
    fn harmonic_schedule_converges_under_a_raised_ratio_ceiling() {
        // A decaying schedule makes the gaps shrink sub-geometrically, so the
        // trailing ratio creeps toward 1 and the default ceiling 0.999 would
        // refuse the geometric tail. Raising the ceiling certifies the run.
        let opts = RunOptions {
            residual_tol: 1e-6,
            ..RunOptions::default()
        };
        let policy = CertifyPolicy {
            residual_tol: 1e-6,
            ratio_ceiling: 0.99999,
            ..CertifyPolicy::default()
        };
        let run = km_run(
            &MapSpec::scale(-1.0),
            &p(&[3.0]),
            &RelaxationSchedule::Harmonic { alpha: 0.9 },
            &euclid(),
            &opts,
            &policy,
        )
        .unwrap();
        assert_eq!(run.certificate.verdict, Verdict::Converged);
        assert!(run.certificate.limit_estimate.as_ref().unwrap()[0].abs() <= 1e-6);
        assert!(run.gap_identity_dev <= 1e-12);
        let total = run.trace.total_displacement();
        assert!((run.km_functional - total).abs() <= 1e-10 * (1.0 + total));
    }

    #[test]
    fn explicit_schedule_running_out_is_an_error() {
        let err = km_run(
            &MapSpec::rotation_2d(1.0),
            &p(&[1.0, 0.0]),
            &RelaxationSchedule::Explicit(vec![0.5, 0.5]),
            &euclid(),
            &RunOptions::default(),
            &CertifyPolicy::default(),
        )
        .unwrap_err();
        assert_eq!(err, Error::ScheduleExhausted { step: 2 });
    }

    #[test]
    fn km_run_requires_the_euclidean_metric() {
        let err = km_run(
            &MapSpec::scale(-1.0),
            &p(&[1.0]),
            &RelaxationSchedule::Constant(0.5),
            &MetricSpec::L1,
            &RunOptions::default(),
            &CertifyPolicy::default(),
        )
        .unwrap_err();
        assert_eq!(err, Error::EuclideanRequired);
    }
}
