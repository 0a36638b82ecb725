//! Run orchestration: drive the configured problem, certify, verify Caristi
//! when a potential is supplied, and compare against the expected baseline.

use std::fmt;
use std::time::Instant;

use orbitsum_core::{
    alternating_projections_run, certify, contraction_solve, douglas_rachford_run, km_run,
    run_orbit, verify_along_orbit, CaristiReport64, OrbitTrace64, Point64, StopReason,
    SummabilityCertificate64,
};

use crate::config::{parse_verdict, Driver, Problem};
use crate::error::{HarnessError, Result};

/// Everything one run produces, minus the full trace (returned alongside).
#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub certificate: SummabilityCertificate64,
    pub stop: StopReason,
    pub trace_len: usize,
    pub final_gap: Option<f64>,
    pub total_displacement: f64,
    pub km_functional: Option<f64>,
    pub gap_identity_dev: Option<f64>,
    pub shadow_point: Option<Point64>,
    pub caristi: Option<CaristiReport64>,
    pub warnings: Vec<String>,
    pub wall_time_secs: f64,
    /// `Some(true/false)` when the config carries an `expected` block.
    pub pass: Option<bool>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    pub trace: OrbitTrace64,
}

fn runtime(name: &str) -> impl Fn(orbitsum_core::Error) -> HarnessError + '_ {
    move |e| HarnessError::Runtime {
        name: name.to_string(),
        source: e,
    }
}

/// Runs one compiled problem. Deterministic: identical configs produce
/// bitwise-identical numeric trace columns.
pub fn run_problem(problem: &Problem) -> Result<RunOutcome> {
    let started = Instant::now();
    let wrap = runtime(&problem.name);
    let mut km_functional = None;
    let mut gap_identity_dev = None;
    let mut shadow_point = None;

    let (trace, certificate) = match &problem.driver {
        Driver::Map(map) => {
            let trace = run_orbit(map, &problem.metric, &problem.x0, &problem.run_options)
                .map_err(&wrap)?;
            let cert = certify(&trace, map, &problem.metric, &problem.policy).map_err(&wrap)?;
            (trace, cert)
        }
        Driver::Contraction(map) => {
            let solve = contraction_solve(
                map,
                &problem.metric,
                &problem.x0,
                problem.run_options.residual_tol,
            )
            .map_err(&wrap)?;
            (solve.trace, solve.certificate)
        }
        Driver::Km { inner, schedule } => {
            let run = km_run(
                inner,
                &problem.x0,
                schedule,
                &problem.metric,
                &problem.run_options,
                &problem.policy,
            )
            .map_err(&wrap)?;
            km_functional = Some(run.km_functional);
            gap_identity_dev = Some(run.gap_identity_dev);
            (run.trace, run.certificate)
        }
        Driver::AltProj { set_a, set_b } => {
            let run = alternating_projections_run(
                set_a,
                set_b,
                &problem.x0,
                &problem.run_options,
                &problem.policy,
            )
            .map_err(&wrap)?;
            (run.trace, run.certificate)
        }
        Driver::DouglasRachford {
            prox_a,
            prox_b,
            lambda,
        } => {
            let run = douglas_rachford_run(
                prox_a,
                prox_b,
                *lambda,
                &problem.x0,
                &problem.run_options,
                &problem.policy,
            )
            .map_err(&wrap)?;
            shadow_point = Some(run.shadow);
            (run.trace, run.certificate)
        }
    };

    let caristi = match (&problem.potential, &problem.driver) {
        (Some(phi), Driver::Map(map)) | (Some(phi), Driver::Contraction(map)) => {
            let steps = trace.len().max(1);
            Some(
                verify_along_orbit(
                    phi,
                    map,
                    &problem.metric,
                    &problem.x0,
                    steps,
                    problem.config.options.caristi_tol,
                )
                .map_err(&wrap)?,
            )
        }
        _ => None,
    };

    let mut failures = Vec::new();
    let pass = problem.config.expected.as_ref().map(|expected| {
        if let Some(v) = &expected.verdict {
            let want = parse_verdict(v).expect("validated at compile");
            if certificate.verdict != want {
                failures.push(format!(
                    "verdict: expected {want}, got {}",
                    certificate.verdict
                ));
            }
        }
        if let Some(fp) = &expected.fixed_point {
            let want = Point64::new(fp.clone()).expect("validated at compile");
            match &certificate.limit_estimate {
                Some(limit) => match problem.metric.distance(limit, &want) {
                    Ok(d) if d <= expected.fixed_point_tol => {}
                    Ok(d) => failures.push(format!(
                        "fixed_point: distance {d:e} exceeds tolerance {:e}",
                        expected.fixed_point_tol
                    )),
                    Err(e) => failures.push(format!("fixed_point: {e}")),
                },
                None => failures.push("fixed_point: no limit estimate in certificate".into()),
            }
        }
        if let Some(td) = expected.total_displacement {
            let got = certificate.total_displacement;
            if (got - td).abs() > expected.total_displacement_tol {
                failures.push(format!(
                    "total_displacement: expected {td} +/- {:e}, got {got}",
                    expected.total_displacement_tol
                ));
            }
        }
        if let Some(r) = expected.ratio {
            match certificate.ratio_estimate {
                Some(got) if (got - r).abs() <= expected.ratio_tol => {}
                Some(got) => failures.push(format!(
                    "ratio: expected {r} +/- {:e}, got {got}",
                    expected.ratio_tol
                )),
                None => failures.push("ratio: no ratio estimate in certificate".into()),
            }
        }
        if let Some(want) = expected.caristi_holds {
            match &caristi {
                Some(report) if report.holds == want => {}
                Some(report) => failures.push(format!(
                    "caristi_holds: expected {want}, got {}",
                    report.holds
                )),
                None => failures.push("caristi_holds: no Caristi report produced".into()),
            }
        }
        failures.is_empty()
    });

    let report = RunReport {
        name: problem.name.clone(),
        stop: trace.stop,
        trace_len: trace.len(),
        final_gap: trace.final_gap(),
        total_displacement: trace.total_displacement(),
        certificate,
        km_functional,
        gap_identity_dev,
        shadow_point,
        caristi,
        warnings: problem.warnings.clone(),
        wall_time_secs: started.elapsed().as_secs_f64(),
        pass,
        failures,
    };
    Ok(RunOutcome { report, trace })
}

fn fmt_point(p: &Point64) -> String {
    let coords: Vec<String> = p.coords().iter().map(|c| format!("{c:.12e}")).collect();
    format!("({})", coords.join(", "))
}

/// Slack vectors print inline, abbreviated past two dozen entries.
fn fmt_slacks(slacks: &[f64]) -> String {
    let fmt = |s: &f64| format!("{s:.3e}");
    if slacks.len() <= 24 {
        slacks.iter().map(fmt).collect::<Vec<_>>().join(" ")
    } else {
        let head: Vec<_> = slacks[..12].iter().map(fmt).collect();
        let tail: Vec<_> = slacks[slacks.len() - 4..].iter().map(fmt).collect();
        format!(
            "{} ... {} ({} total)",
            head.join(" "),
            tail.join(" "),
            slacks.len()
        )
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {}", self.name)?;
        writeln!(f, "  verdict: {}", self.certificate.verdict)?;
        writeln!(
            f,
            "  steps: {} (stop: {}), total displacement: {:.12e}",
            self.trace_len, self.stop, self.total_displacement
        )?;
        if let Some(g) = self.final_gap {
            writeln!(f, "  final gap: {g:.12e}")?;
        }
        if let Some(r) = self.certificate.ratio_estimate {
            writeln!(f, "  ratio estimate: {r:.12}")?;
        }
        if let Some(t) = self.certificate.tail_bound {
            writeln!(f, "  tail bound: {t:.6e}")?;
        }
        if let Some(p) = &self.certificate.limit_estimate {
            writeln!(f, "  limit estimate: {}", fmt_point(p))?;
        }
        if let Some(r) = self.certificate.residual {
            writeln!(f, "  fixed-point residual: {r:.6e}")?;
        }
        if let Some(kf) = self.km_functional {
            writeln!(f, "  km functional: {kf:.12e}")?;
        }
        if let Some(dev) = self.gap_identity_dev {
            writeln!(f, "  km gap-identity deviation: {dev:.3e}")?;
        }
        if let Some(s) = &self.shadow_point {
            writeln!(f, "  shadow point: {}", fmt_point(s))?;
        }
        writeln!(f, "  evidence: {}", self.certificate.evidence)?;
        if let Some(c) = &self.caristi {
            writeln!(
                f,
                "  caristi: holds={} steps={} min_slack={:.6e} telescoped_bound={:.6e} gap_sum={:.6e}{}",
                c.holds,
                c.steps_checked,
                c.min_slack,
                c.telescoped_bound,
                c.gap_sum,
                c.truncated_at
                    .map(|j| format!(" truncated_at={j}"))
                    .unwrap_or_default()
            )?;
            writeln!(f, "  caristi slacks: {}", fmt_slacks(&c.slacks))?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        writeln!(f, "  wall time: {:.3}ms", self.wall_time_secs * 1e3)?;
        match self.pass {
            Some(true) => writeln!(f, "  expected: PASS")?,
            Some(false) => {
                writeln!(f, "  expected: FAIL")?;
                for failure in &self.failures {
                    writeln!(f, "    mismatch {failure}")?;
                }
            }
            None => {}
        }
        Ok(())
    }
}
