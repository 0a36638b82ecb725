//! Forward-backward and Douglas-Rachford splitting steps.

use crate::certificate::{certify, CertifyPolicy, SummabilityCertificate};
use crate::error::Result;
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::orbit::{run_orbit, OrbitTrace, RunOptions};
use crate::scalar::Scalar;

use super::prox::ProxSpec;

/// One forward-backward step: gradient descent on the exact quadratic
/// `f(x) = w/2 ||x - grad_center||^2` followed by the prox of `reg`.
pub fn forward_backward_step<T: Scalar>(
    grad_center: &Point<T>,
    grad_weight: T,
    reg: &ProxSpec<T>,
    step: T,
    x: &Point<T>,
) -> Result<Point<T>> {
    if x.dim() != grad_center.dim() {
        return Err(crate::error::Error::DimensionMismatch {
            left: x.dim(),
            right: grad_center.dim(),
        });
    }
    let forward: Vec<T> = x
        .coords()
        .iter()
        .zip(grad_center.coords())
        .map(|(&c, &z)| c - step * grad_weight * (c - z))
        .collect();
    let forward = Point::from_map_output(forward)?;
    reg.prox(step, &forward)
}

/// The half-averaged reflect-reflect Douglas-Rachford step
/// `x -> x/2 + R_B(R_A(x))/2` with `R = 2 prox - id`.
pub fn douglas_rachford_step<T: Scalar>(
    prox_a: &ProxSpec<T>,
    prox_b: &ProxSpec<T>,
    lambda: T,
    x: &Point<T>,
) -> Result<Point<T>> {
    let reflect = |spec: &ProxSpec<T>, v: &Point<T>| -> Result<Point<T>> {
        let p = spec.prox(lambda, v)?;
        let out = p
            .coords()
            .iter()
            .zip(v.coords())
            .map(|(&pc, &vc)| pc + pc - vc)
            .collect();
        Point::from_map_output(out)
    };
    let ra = reflect(prox_a, x)?;
    let rb = reflect(prox_b, &ra)?;
    let half = T::from_f64(0.5);
    let out = x
        .coords()
        .iter()
        .zip(rb.coords())
        .map(|(&xc, &rc)| half * xc + half * rc)
        .collect();
    Point::from_map_output(out)
}

/// A Douglas-Rachford orbit run: the DR fixed point plus its shadow
/// `prox_A(p)`, which is what solves the underlying feasibility/inclusion.
#[derive(Debug, Clone)]
pub struct DouglasRachfordRun<T> {
    pub trace: OrbitTrace<T>,
    pub certificate: SummabilityCertificate<T>,
    /// `prox_A` of the final iterate (of the limit, when certified).
    pub shadow: Point<T>,
}

pub fn douglas_rachford_run<T: Scalar>(
    prox_a: &ProxSpec<T>,
    prox_b: &ProxSpec<T>,
    lambda: T,
    x0: &Point<T>,
    opts: &RunOptions<T>,
    policy: &CertifyPolicy<T>,
) -> Result<DouglasRachfordRun<T>> {
    let map = MapSpec::douglas_rachford(prox_a.clone(), prox_b.clone(), lambda);
    let metric = MetricSpec::Euclidean;
    let trace = run_orbit(&map, &metric, x0, opts)?;
    let certificate = certify(&trace, &map, &metric, policy)?;
    let at = certificate
        .limit_estimate
        .as_ref()
        .unwrap_or_else(|| trace.final_iterate());
    let shadow = prox_a.prox(lambda, at)?;
    Ok(DouglasRachfordRun {
        trace,
        certificate,
        shadow,
    })
}
