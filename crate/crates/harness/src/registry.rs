//! Built-in problems. Each fixture is stored as config text and goes through
//! the same parser and validator as a user file, so the registry doubles as a
//! worked set of examples for the config format. Expected blocks come from
//! closed-form oracles (geometric series, linear solves, hand projections).

use crate::config::{parse_problem, Problem};
use crate::error::Result;

pub const FIXTURES: &[(&str, &str)] = &[
    (
        "banach-half",
        r#"{
  "name": "banach-half",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "half", "classification": {"kind": "strong-contraction", "modulus": 0.5}},
  "x0": [1.0],
  "options": {"residual_tol": 1e-12},
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0], "fixed_point_tol": 1e-10,
    "total_displacement": 1.0, "total_displacement_tol": 1e-10,
    "ratio": 0.5, "ratio_tol": 1e-6
  }
}"#,
    ),
    (
        "affine-contraction-2d",
        r#"{
  "name": "affine-contraction-2d",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "contraction",
    "map": {
      "kind": "affine",
      "matrix": [[0.3, 0.0], [0.0, 0.3]],
      "offset": [0.7, 1.4],
      "classification": {"kind": "strong-contraction", "modulus": 0.3}
    }
  },
  "x0": [0.0, 0.0],
  "options": {"residual_tol": 1e-12},
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [1.0, 2.0], "fixed_point_tol": 1e-9,
    "total_displacement": 2.23606797749979, "total_displacement_tol": 1e-9,
    "ratio": 0.3, "ratio_tol": 5e-4
  }
}"#,
    ),
    (
        "shift-by-one",
        r#"{
  "name": "shift-by-one",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "shift", "offset": 1.0},
  "x0": [0.0],
  "options": {"displacement_budget": 100.0},
  "expected": {
    "verdict": "DIVERGENT",
    "total_displacement": 101.0, "total_displacement_tol": 1e-9
  }
}"#,
    ),
    (
        "hypot-drift",
        r#"{
  "name": "hypot-drift",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "hypot"},
  "x0": [0.0],
  "options": {"displacement_budget": 50.0},
  "expected": {
    "verdict": "INCONCLUSIVE",
    "total_displacement": 50.005, "total_displacement_tol": 0.05
  }
}"#,
    ),
    (
        "km-negation",
        r#"{
  "name": "km-negation",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "km",
    "inner": {"kind": "scale", "factor": -1.0, "classification": {"kind": "nonexpansive"}},
    "schedule": {"kind": "constant", "alpha": 0.5}
  },
  "x0": [3.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0], "fixed_point_tol": 1e-12,
    "total_displacement": 3.0, "total_displacement_tol": 1e-12
  }
}"#,
    ),
    (
        "km-rotation-quarter",
        r#"{
  "name": "km-rotation-quarter",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "km",
    "inner": {
      "kind": "affine",
      "matrix": [[0.0, -1.0], [1.0, 0.0]],
      "offset": [0.0, 0.0],
      "classification": {"kind": "nonexpansive"}
    },
    "schedule": {"kind": "constant", "alpha": 0.5}
  },
  "x0": [1.0, 0.0],
  "options": {"residual_tol": 1e-11},
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 1e-9,
    "total_displacement": 2.414213562373095, "total_displacement_tol": 1e-9,
    "ratio": 0.7071067811865476, "ratio_tol": 1e-6
  }
}"#,
    ),
    (
        "altproj-lines-45",
        r#"{
  "name": "altproj-lines-45",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "alternating-projections",
    "set_a": {"kind": "affine-subspace", "basis": [[1.0, 0.0]], "anchor": [0.0, 0.0]},
    "set_b": {"kind": "affine-subspace", "basis": [[0.7071067811865476, 0.7071067811865476]], "anchor": [0.0, 0.0]}
  },
  "x0": [1.0, 0.0],
  "options": {"residual_tol": 1e-12},
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 1e-8,
    "total_displacement": 2.414213562373095, "total_displacement_tol": 1e-9
  }
}"#,
    ),
    (
        "altproj-parallel-disjoint",
        r#"{
  "name": "altproj-parallel-disjoint",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "alternating-projections",
    "set_a": {"kind": "hyperplane", "normal": [0.0, 1.0], "offset": 0.0},
    "set_b": {"kind": "hyperplane", "normal": [0.0, 1.0], "offset": 1.0}
  },
  "x0": [0.0, 0.0],
  "options": {"displacement_budget": 100.0},
  "expected": {
    "verdict": "DIVERGENT",
    "total_displacement": 101.0, "total_displacement_tol": 1e-9
  }
}"#,
    ),
    (
        "dr-lines-45",
        r#"{
  "name": "dr-lines-45",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "douglas-rachford",
    "prox_a": {"kind": "indicator", "set": {"kind": "affine-subspace", "basis": [[1.0, 0.0]], "anchor": [0.0, 0.0]}},
    "prox_b": {"kind": "indicator", "set": {"kind": "affine-subspace", "basis": [[0.7071067811865476, 0.7071067811865476]], "anchor": [0.0, 0.0]}},
    "lambda": 1.0
  },
  "x0": [1.0, 0.0],
  "options": {"residual_tol": 1e-12},
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 1e-8,
    "total_displacement": 2.414213562373095, "total_displacement_tol": 1e-9,
    "ratio": 0.7071067811865476, "ratio_tol": 1e-6
  }
}"#,
    ),
    (
        "fb-box-quadratic",
        r#"{
  "name": "fb-box-quadratic",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "forward-backward",
    "grad_center": [2.0, 2.0],
    "grad_weight": 1.0,
    "reg": {"kind": "indicator", "set": {"kind": "box", "lo": [0.0, 0.0], "hi": [1.0, 1.0]}},
    "step": 1.0
  },
  "x0": [0.0, 0.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [1.0, 1.0], "fixed_point_tol": 1e-12,
    "total_displacement": 1.4142135623730951, "total_displacement_tol": 1e-12
  }
}"#,
    ),
    (
        "prox-l1",
        r#"{
  "name": "prox-l1",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "proximal-point",
    "prox": {"kind": "l1", "weight": 1.0},
    "lambda": 1.0
  },
  "x0": [3.0, -0.5],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 1e-12,
    "total_displacement": 3.118033988749895, "total_displacement_tol": 1e-10
  }
}"#,
    ),
    (
        "caristi-half-linear",
        r#"{
  "name": "caristi-half-linear",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "half", "classification": {"kind": "strong-contraction", "modulus": 0.5}},
  "x0": [1.0],
  "potential": {"kind": "linear-scalar", "slope": 2.0, "lower_bound": 0.0, "witness": [1.0]},
  "options": {"residual_tol": 1e-12},
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0], "fixed_point_tol": 1e-10,
    "total_displacement": 1.0, "total_displacement_tol": 1e-10,
    "caristi_holds": true
  }
}"#,
    ),
    (
        "caristi-shift-negative",
        r#"{
  "name": "caristi-shift-negative",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "shift", "offset": 1.0},
  "x0": [0.0],
  "potential": {"kind": "linear-scalar", "slope": 2.0, "lower_bound": 0.0, "witness": [0.0]},
  "options": {"displacement_budget": 100.0},
  "expected": {
    "verdict": "DIVERGENT",
    "total_displacement": 101.0, "total_displacement_tol": 1e-9,
    "caristi_holds": false
  }
}"#,
    ),
];

/// Compiles every built-in problem. Registry text is validated like any user
/// config, so this cannot silently drift from the schema.
pub fn registry() -> Result<Vec<Problem>> {
    FIXTURES.iter().map(|(_, text)| parse_problem(text)).collect()
}

/// Looks a fixture up by name.
pub fn registry_problem(name: &str) -> Result<Option<Problem>> {
    for (fixture_name, text) in FIXTURES {
        if *fixture_name == name {
            return parse_problem(text).map(Some);
        }
    }
    Ok(None)
}
