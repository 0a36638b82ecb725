//! Fixed-point solving for declared strong contractions, with the geometric
//! a-priori error bound `c^n / (1 - c) * d(x_0, f(x_0))`.

use crate::certificate::{certify, CertifyPolicy, SummabilityCertificate};
use crate::error::{Error, Result};
use crate::map::MapSpec;
use crate::metric::{MetricSpec, Point};
use crate::orbit::{run_orbit, OrbitTrace, RunOptions};
use crate::scalar::Scalar;

/// Slack allowed on observed gap ratios before a declared modulus counts as
/// misdeclared.
const RATIO_SLACK: f64 = 1e-9;

/// Absolute per-step guard: a ratio excess only counts when
/// `gap_{n+1} - c * gap_n` also exceeds `1e-12 * scale`, with scale taken
/// from the iterate magnitude. Near the fixed point the stored iterates are
/// correct only to machine epsilon of their own size, so tiny gaps carry
/// ratio noise far above any fixed relative slack.
const ABS_GUARD: f64 = 1e-12;

/// Output of a contraction solve: the limit, its certificate, and the data
/// for the a-priori bound.
#[derive(Debug, Clone)]
pub struct ContractionSolve<T> {
    pub fixed_point: Point<T>,
    pub certificate: SummabilityCertificate<T>,
    pub trace: OrbitTrace<T>,
    pub modulus: T,
    /// `d(x_0, f(x_0))`, the first gap.
    pub initial_gap: T,
}

impl<T: Scalar> ContractionSolve<T> {
    /// `c^n / (1 - c) * d(x_0, f(x_0))`: an upper bound on `d(x_n, p)`
    /// obtained by summing the geometric gap bound through the Cauchy
    /// estimate.
    pub fn apriori_bound(&self, n: usize) -> T {
        self.modulus.powi(n as i32) / (T::one() - self.modulus) * self.initial_gap
    }
}

/// Iterates a declared strong contraction to its fixed point.
///
/// Every observed gap ratio is checked against the declared modulus; a ratio
/// above `c + 1e-9` is reported as a misdeclared contraction.
pub fn contraction_solve<T: Scalar>(
    map: &MapSpec<T>,
    metric: &MetricSpec<T>,
    x0: &Point<T>,
    tol: T,
) -> Result<ContractionSolve<T>> {
    let modulus = map.contraction_modulus().ok_or(Error::NotAContraction)?;
    if !modulus.is_finite() || modulus < T::zero() || modulus >= T::one() {
        return Err(Error::InvalidModulus {
            value: format!("{modulus}"),
        });
    }
    let opts = RunOptions {
        residual_tol: tol,
        thinning_stride: 1,
        ..RunOptions::default()
    };
    let trace = run_orbit(map, metric, x0, &opts)?;
    let slack = T::from_f64(RATIO_SLACK);
    let guard = T::from_f64(ABS_GUARD);
    for (step, ratio) in trace.ratios.iter().enumerate() {
        if let Some(r) = ratio {
            if *r > modulus + slack {
                let scale = T::one()
                    + trace
                        .iterate_at(step + 1)
                        .map(|p| p.l2_norm())
                        .unwrap_or_else(|| trace.total_displacement());
                let excess = trace.gaps[step + 1] - modulus * trace.gaps[step];
                if excess > guard * scale {
                    return Err(Error::MisdeclaredContraction {
                        declared: format!("{modulus}"),
                        observed: format!("{r}"),
                        step,
                    });
                }
            }
        }
    }
    let policy = CertifyPolicy {
        residual_tol: tol,
        ..CertifyPolicy::default()
    };
    let certificate = certify(&trace, map, metric, &policy)?;
    let fixed_point = certificate
        .limit_estimate
        .clone()
        .unwrap_or_else(|| trace.final_iterate().clone());
    let initial_gap = trace.gaps.first().copied().unwrap_or_else(T::zero);
    Ok(ContractionSolve {
        fixed_point,
        certificate,
        trace,
        modulus,
        initial_gap,
    })
}
