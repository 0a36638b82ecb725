//! Alternating projections between two closed convex sets.
//!
//! The trace records every projection as a step, so the gap series measures
//! the total displacement along the visited polyline; stop decisions are made
//! at cycle boundaries (after each B-projection), because a single zero
//! half-gap only means the current point sits in one of the sets. The
//! certificate is issued against the composed map `P_B . P_A`.

use crate::certificate::{certify, CertifyPolicy, SummabilityCertificate};
use crate::error::Result;
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::orbit::{OrbitTrace, RunOptions, StopReason, TraceBuilder};
use crate::scalar::Scalar;

use super::convex::ConvexSetSpec;

#[derive(Debug, Clone)]
pub struct AltProjRun<T> {
    pub trace: OrbitTrace<T>,
    pub certificate: SummabilityCertificate<T>,
}

/// Runs `x -> P_A x -> P_B P_A x -> ...` from `x0`.
pub fn alternating_projections_run<T: Scalar>(
    set_a: &ConvexSetSpec<T>,
    set_b: &ConvexSetSpec<T>,
    x0: &Point<T>,
    opts: &RunOptions<T>,
    policy: &CertifyPolicy<T>,
) -> Result<AltProjRun<T>> {
    opts.validate()?;
    set_a.validate(x0.dim())?;
    set_b.validate(x0.dim())?;
    let metric = MetricSpec::Euclidean;
    let composed = MapSpec::composition(vec![
        MapSpec::projection(set_a.clone()),
        MapSpec::projection(set_b.clone()),
    ]);

    let mut builder = TraceBuilder::new(x0.clone(), opts.thinning_stride);
    let mut stop = StopReason::MaxIterations;
    let mut terminal_residual = None;
    let mut prev_gap = T::zero();
    for n in 0..opts.max_iters {
        let x = builder.current().clone();
        let set = if n % 2 == 0 { set_a } else { set_b };
        let next = set.project(&x)?;
        let gap = metric.distance(&x, &next)?;
        // Residual column: distance from x_n to its full composed image.
        let composed_image = composed.eval(&x)?;
        let residual = metric.distance(&x, &composed_image)?;
        builder.record(next, gap, residual);
        if builder.running_total() > opts.displacement_budget {
            stop = StopReason::DisplacementBudgetExceeded;
            break;
        }
        if n % 2 == 1 {
            let cycle = prev_gap + gap;
            if cycle == T::zero() {
                stop = StopReason::GapExactlyZero;
                terminal_residual = Some(cycle);
                break;
            }
            if cycle <= opts.residual_tol {
                stop = StopReason::ResidualBelowTol;
                terminal_residual = Some(cycle);
                break;
            }
        }
        prev_gap = gap;
    }
    let trace = builder.finish(stop, terminal_residual);
    let certificate = certify(&trace, &composed, &metric, policy)?;
    Ok(AltProjRun { trace, certificate })
}
