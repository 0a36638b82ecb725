//! Registry-wide guarantees: every baseline passes, all three verdicts and
//! both Caristi outcomes are represented, and validation warnings surface in
//! run reports.

use orbitsum_core::Verdict;
use orbitsum_harness::{parse_problem, registry, run_problem};

#[test]
fn every_fixture_baseline_passes_and_outcomes_cover_the_space() {
    let mut verdicts = Vec::new();
    let mut caristi_outcomes = Vec::new();
    for problem in registry().unwrap() {
        let outcome = run_problem(&problem).unwrap();
        assert_eq!(
            outcome.report.pass,
            Some(true),
            "{}: {:?}",
            problem.name,
            outcome.report.failures
        );
        verdicts.push(outcome.report.certificate.verdict);
        if let Some(caristi) = &outcome.report.caristi {
            caristi_outcomes.push(caristi.holds);
        }
    }
    for verdict in [Verdict::Converged, Verdict::Divergent, Verdict::Inconclusive] {
        assert!(
            verdicts.contains(&verdict),
            "no fixture certifies {verdict}"
        );
    }
    assert!(caristi_outcomes.contains(&true));
    assert!(caristi_outcomes.contains(&false));
}

#[test]
fn forward_backward_step_warning_reaches_the_report() {
    let text = r#"{
      "name": "fb-too-long-step",
      "dimension": 1,
      "metric": {"kind": "euclidean"},
      "algorithm": {
        "scheme": "forward-backward",
        "grad_center": [0.0],
        "grad_weight": 1.0,
        "reg": {"kind": "l1", "weight": 1.0},
        "step": 3.0
      },
      "x0": [0.5]
    }"#;
    let problem = parse_problem(text).unwrap();
    assert_eq!(problem.warnings.len(), 1);
    let outcome = run_problem(&problem).unwrap();
    assert!(outcome.report.warnings[0].contains("nonexpansive"));
}
