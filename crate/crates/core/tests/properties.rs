//! Cross-module invariants: metric axioms on random samples, Cauchy
//! dominance, contraction gap bounds, certificate soundness, Caristi
//! telescoping, and the nonexpansiveness of every built-in operator.

use orbitsum_core::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn pt(coords: &[f64]) -> Point64 {
    Point::new(coords.to_vec()).unwrap()
}

fn random_point(rng: &mut StdRng, dim: usize, span: f64) -> Point64 {
    Point::new((0..dim).map(|_| rng.gen_range(-span..span)).collect()).unwrap()
}

fn all_metrics() -> Vec<MetricSpec64> {
    vec![
        MetricSpec::Euclidean,
        MetricSpec::L1,
        MetricSpec::Linf,
        MetricSpec::WeightedEuclidean {
            weights: vec![4.0, 1.0, 0.25],
        },
    ]
}

#[test]
fn builtin_metrics_pass_axiom_sampling() {
    let mut rng = StdRng::seed_from_u64(42);
    let samples: Vec<_> = (0..100)
        .map(|_| {
            (
                random_point(&mut rng, 3, 10.0),
                random_point(&mut rng, 3, 10.0),
                random_point(&mut rng, 3, 10.0),
            )
        })
        .collect();
    for metric in all_metrics() {
        let report = check_metric_axioms(&metric, &samples, 1e-12).unwrap();
        assert!(report.passed(), "violations for {metric:?}: {:?}", report.violations);
        assert_eq!(report.triples_checked, 100);
        assert_eq!(report.max_symmetry_gap, Some(0.0)); // bitwise symmetric
    }
}

#[test]
fn triangle_inequality_holds_to_scaled_epsilon() {
    let mut rng = StdRng::seed_from_u64(7);
    for metric in all_metrics() {
        for _ in 0..200 {
            let x = random_point(&mut rng, 3, 100.0);
            let y = random_point(&mut rng, 3, 100.0);
            let z = random_point(&mut rng, 3, 100.0);
            let dxy = metric.distance(&x, &y).unwrap();
            let dyz = metric.distance(&y, &z).unwrap();
            let dxz = metric.distance(&x, &z).unwrap();
            let scale = dxy + dyz + dxz;
            assert!(dxz <= dxy + dyz + 4.0 * f64::EPSILON * scale);
        }
    }
}

#[test]
fn cauchy_bound_dominates_iterate_distances() {
    // Random rotation-flavoured contraction in R^2, all iterates retained.
    let map = MapSpec::affine(
        vec![vec![0.55, -0.40], vec![0.40, 0.55]],
        vec![1.0, -0.5],
    );
    let metric = MetricSpec::Euclidean;
    let opts = RunOptions {
        residual_tol: 1e-13,
        ..RunOptions::default()
    };
    let trace = run_orbit(&map, &metric, &pt(&[8.0, -3.0]), &opts).unwrap();
    assert!(trace.len() > 20);
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(0..trace.len());
        let m = rng.gen_range(n + 1..=trace.len());
        let bound = cauchy_bound(&trace, n, m).unwrap();
        let (a, b) = (trace.iterate_at(n), trace.iterate_at(m));
        let (a, b) = (a.unwrap(), b.unwrap());
        let dist = metric.distance(a, b).unwrap();
        assert!(
            dist <= bound + 1e-10 * (1.0 + bound),
            "cauchy dominance failed for [{n}, {m})"
        );
    }
}

#[test]
fn converse_direction_zero_residual_start() {
    // Starting at a point with residual exactly zero yields an all-zero gap
    // series, zero displacement, and a CONVERGED certificate.
    let cases: Vec<(MapSpec64, Point64)> = vec![
        (MapSpec::half(), pt(&[0.0])),
        (MapSpec::scale(-1.0), pt(&[0.0, 0.0])),
        (
            MapSpec::affine(vec![vec![0.0, 0.0], vec![0.0, 0.0]], vec![0.25, -0.5]),
            pt(&[0.25, -0.5]),
        ),
        (
            MapSpec::prox(ProxSpec::L1 { weight: 1.0 }, 1.0),
            pt(&[0.0, 0.0]),
        ),
    ];
    let metric = MetricSpec::Euclidean;
    for (map, fixed) in cases {
        assert_eq!(fixed_point_residual(&map, &metric, &fixed).unwrap(), 0.0);
        let trace = run_orbit(&map, &metric, &fixed, &RunOptions::default()).unwrap();
        assert!(trace.gaps.iter().all(|&g| g == 0.0));
        assert_eq!(trace.total_displacement(), 0.0);
        let cert = certify(&trace, &map, &metric, &CertifyPolicy::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Converged);
        assert_eq!(cert.total_displacement, 0.0);
    }
}

#[test]
fn declared_contraction_gap_bound_per_step() {
    // gaps[n+1] <= c * gaps[n] + 1e-12 * scale, with scale the iterate size.
    let map = MapSpec::affine(vec![vec![0.3, 0.0], vec![0.0, 0.3]], vec![0.7, 1.4])
        .with_classification(MapClass::StrongContraction(0.3));
    let metric = MetricSpec::Euclidean;
    let opts = RunOptions {
        residual_tol: 1e-12,
        ..RunOptions::default()
    };
    let trace = run_orbit(&map, &metric, &pt(&[0.0, 0.0]), &opts).unwrap();
    for n in 0..trace.len() - 1 {
        let scale = 1.0 + trace.iterate_at(n + 1).map(|p| p.l2_norm()).unwrap_or(1.0);
        assert!(
            trace.gaps[n + 1] <= 0.3 * trace.gaps[n] + 1e-12 * scale,
            "contraction bound failed at n={n}"
        );
    }
}

#[test]
fn certificate_soundness_residual_recheck() {
    let metric = MetricSpec::Euclidean;
    let cases: Vec<(MapSpec64, Point64)> = vec![
        (MapSpec::half(), pt(&[1.0])),
        (
            MapSpec::affine(vec![vec![0.3, 0.0], vec![0.0, 0.3]], vec![0.7, 1.4]),
            pt(&[0.0, 0.0]),
        ),
        (
            MapSpec::douglas_rachford(
                ProxSpec::Indicator(ConvexSetSpec::Hyperplane {
                    normal: vec![0.0, 1.0],
                    offset: 0.0,
                }),
                ProxSpec::Indicator(ConvexSetSpec::AffineSubspace {
                    basis: vec![vec![std::f64::consts::FRAC_1_SQRT_2; 2]],
                    anchor: pt(&[0.0, 0.0]),
                }),
                1.0,
            ),
            pt(&[1.0, 0.0]),
        ),
    ];
    for (map, x0) in cases {
        let opts = RunOptions {
            residual_tol: 1e-11,
            ..RunOptions::default()
        };
        let policy = CertifyPolicy {
            residual_tol: 1e-10,
            ..CertifyPolicy::default()
        };
        let trace = run_orbit(&map, &metric, &x0, &opts).unwrap();
        let cert = certify(&trace, &map, &metric, &policy).unwrap();
        assert_eq!(cert.verdict, Verdict::Converged);
        let limit = cert.limit_estimate.as_ref().unwrap();
        let recheck = fixed_point_residual(&map, &metric, limit).unwrap();
        assert!(recheck <= policy.residual_tol);
        assert_eq!(cert.residual, Some(recheck));
    }
}

fn builtin_nonexpansive_operators() -> Vec<(&'static str, MapSpec64)> {
    let line = ConvexSetSpec::AffineSubspace {
        basis: vec![vec![std::f64::consts::FRAC_1_SQRT_2; 2]],
        anchor: pt(&[0.0, 0.0]),
    };
    vec![
        ("rotation", MapSpec::rotation_2d(1.1)),
        (
            "projection-box",
            MapSpec::projection(ConvexSetSpec::Box {
                lo: vec![-1.0, 0.0],
                hi: vec![2.0, 1.5],
            }),
        ),
        (
            "projection-ball",
            MapSpec::projection(ConvexSetSpec::Ball {
                center: pt(&[0.5, -0.25]),
                radius: 1.25,
            }),
        ),
        (
            "projection-halfspace",
            MapSpec::projection(ConvexSetSpec::Halfspace {
                normal: vec![1.0, 2.0],
                offset: 0.5,
            }),
        ),
        (
            "projection-hyperplane",
            MapSpec::projection(ConvexSetSpec::Hyperplane {
                normal: vec![3.0, -1.0],
                offset: 1.0,
            }),
        ),
        ("projection-subspace", MapSpec::projection(line.clone())),
        (
            "prox-quadratic",
            MapSpec::prox(
                ProxSpec::Quadratic {
                    center: pt(&[1.0, 1.0]),
                    weight: 2.0,
                },
                0.7,
            ),
        ),
        ("prox-l1", MapSpec::prox(ProxSpec::L1 { weight: 1.0 }, 0.5)),
        (
            "km-averaged-rotation",
            MapSpec::averaged(MapSpec::rotation_2d(std::f64::consts::FRAC_PI_2), 0.5),
        ),
        (
            "dr-step",
            MapSpec::douglas_rachford(
                ProxSpec::Indicator(ConvexSetSpec::Hyperplane {
                    normal: vec![0.0, 1.0],
                    offset: 0.0,
                }),
                ProxSpec::Indicator(line),
                1.0,
            ),
        ),
    ]
}

#[test]
fn every_builtin_operator_is_nonexpansive_on_a_thousand_pairs() {
    let mut rng = StdRng::seed_from_u64(2024);
    for (name, map) in builtin_nonexpansive_operators() {
        let pairs: Vec<_> = (0..1000)
            .map(|_| (random_point(&mut rng, 2, 20.0), random_point(&mut rng, 2, 20.0)))
            .collect();
        let report = nonexpansiveness_check(&map, &pairs, 1e-10).unwrap();
        assert!(
            report.passed(),
            "{name}: {} violations, first {:?}",
            report.violations.len(),
            report.violations.first()
        );
        assert_eq!(report.pairs_checked, 1000);
    }
}

#[test]
fn expansion_map_is_flagged() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut pairs: Vec<_> = (0..50)
        .map(|_| (random_point(&mut rng, 2, 5.0), random_point(&mut rng, 2, 5.0)))
        .collect();
    pairs.push((pt(&[0.0, 0.0]), pt(&[1.0, 0.0])));
    let report = nonexpansiveness_check(&MapSpec::scale(2.0), &pairs, 1e-10).unwrap();
    assert!(!report.passed());
    let flagged = report.violations.last().unwrap();
    assert_eq!(flagged.ratio, Some(2.0));
}

#[test]
fn projection_optimality_against_sampled_members() {
    let mut rng = StdRng::seed_from_u64(99);
    let sets = vec![
        ConvexSetSpec::Box {
            lo: vec![-1.0, -1.0],
            hi: vec![1.0, 2.0],
        },
        ConvexSetSpec::Ball {
            center: pt(&[0.0, 0.5]),
            radius: 2.0,
        },
        ConvexSetSpec::Halfspace {
            normal: vec![1.0, 1.0],
            offset: 1.0,
        },
        ConvexSetSpec::Hyperplane {
            normal: vec![1.0, -2.0],
            offset: 0.5,
        },
        ConvexSetSpec::AffineSubspace {
            basis: vec![vec![std::f64::consts::FRAC_1_SQRT_2; 2]],
            anchor: pt(&[1.0, 0.0]),
        },
    ];
    let metric = MetricSpec::Euclidean;
    for set in sets {
        for _ in 0..10 {
            let x = random_point(&mut rng, 2, 10.0);
            let px = set.project(&x).unwrap();
            assert!(set.membership_residual(&px).unwrap() <= 1e-10);
            let d_opt = metric.distance(&x, &px).unwrap();
            for _ in 0..100 {
                // Sampled member: project a random probe into the set and
                // confirm membership by the residual formula.
                let s = set.project(&random_point(&mut rng, 2, 15.0)).unwrap();
                assert!(set.membership_residual(&s).unwrap() <= 1e-10);
                let d_s = metric.distance(&x, &s).unwrap();
                assert!(d_opt <= d_s + 1e-10, "optimality failed for {set:?}");
            }
        }
    }
}

#[test]
fn caristi_witness_forbids_divergence() {
    // A verified Caristi witness bounds total displacement, so the engine
    // must not certify DIVERGENT within budget.
    let phi = PotentialSpec {
        kind: PotentialKind::LinearScalar { slope: 2.0 },
        declared_lower_bound: 0.0,
        proper_witness: pt(&[1.0]),
    };
    let map = MapSpec::half();
    let metric = MetricSpec::Euclidean;
    let report = verify_along_orbit(&phi, &map, &metric, &pt(&[1.0]), 40, 1e-12).unwrap();
    assert!(report.holds);
    let trace = run_orbit(&map, &metric, &pt(&[1.0]), &RunOptions::default()).unwrap();
    let cert = certify(&trace, &map, &metric, &CertifyPolicy::default()).unwrap();
    assert_ne!(cert.verdict, Verdict::Divergent);
    // Displacement bound from the telescoped potential drop.
    assert!(cert.total_displacement <= report.telescoped_bound + 40.0 * 1e-12);
}

#[test]
fn potential_decreases_monotonically_under_holds() {
    let phi = PotentialSpec {
        kind: PotentialKind::LinearScalar { slope: 2.0 },
        declared_lower_bound: 0.0,
        proper_witness: pt(&[1.0]),
    };
    let map = MapSpec::half();
    let metric = MetricSpec::Euclidean;
    let tol = 1e-12;
    let mut x = pt(&[1.0]);
    let mut prev = eval_potential(&phi, &metric, &x, tol).unwrap();
    for _ in 0..30 {
        let slack = check_caristi_step(&phi, &map, &metric, &x, tol).unwrap();
        assert!(slack >= -tol);
        x = eval_map(&map, &x).unwrap();
        let next = eval_potential(&phi, &metric, &x, tol).unwrap();
        assert!(next <= prev + tol);
        prev = next;
    }
}

#[test]
fn canonical_identity_residual_within_truncation_budget() {
    let metric = MetricSpec::Euclidean;
    let trunc = TruncationPolicy {
        term_tol: 1e-12,
        ..TruncationPolicy::default()
    };
    let cases: Vec<(MapSpec64, Point64)> = vec![
        (MapSpec::half(), pt(&[1.0])),
        (
            MapSpec::affine(vec![vec![0.3, 0.0], vec![0.0, 0.3]], vec![1.0, 1.0]),
            pt(&[0.0, 0.0]),
        ),
    ];
    for (map, x) in cases {
        let residual = canonical_caristi_identity_check(&map, &metric, &x, &trunc).unwrap();
        let tail_x = orbit_potential(&map, &metric, &x, &trunc)
            .unwrap()
            .truncation_error_bound
            .unwrap();
        let fx = eval_map(&map, &x).unwrap();
        let tail_fx = orbit_potential(&map, &metric, &fx, &trunc)
            .unwrap()
            .truncation_error_bound
            .unwrap();
        assert!(
            residual <= tail_x + tail_fx + 1e-10,
            "identity residual {residual} exceeds truncation budget"
        );
        assert!(residual <= 1e-8);
    }
}

#[test]
fn core_is_generic_over_the_scalar_type() {
    // The same machinery runs in single precision.
    let map: MapSpec<f32> = MapSpec::half();
    let metric: MetricSpec<f32> = MetricSpec::Euclidean;
    let x0: Point<f32> = Point::scalar(1.0f32).unwrap();
    let opts = RunOptions::<f32> {
        residual_tol: 1e-6,
        ..RunOptions::default()
    };
    let trace = run_orbit(&map, &metric, &x0, &opts).unwrap();
    assert_eq!(trace.stop, StopReason::ResidualBelowTol);
    let cert = certify(&trace, &map, &metric, &CertifyPolicy::<f32> {
        residual_tol: 1e-6,
        ..CertifyPolicy::default()
    })
    .unwrap();
    assert_eq!(cert.verdict, Verdict::Converged);
    assert!((cert.total_displacement - 1.0f32).abs() <= 1e-5);
    let d: f32 = metric
        .distance(&Point::new(vec![0.0f32, 0.0]).unwrap(), &Point::new(vec![3.0f32, 4.0]).unwrap())
        .unwrap();
    assert_eq!(d, 5.0f32);
}

proptest! {
    #[test]
    fn distance_is_symmetric_and_zero_on_the_diagonal(
        xs in proptest::collection::vec(-1e6f64..1e6, 1..6),
        ys in proptest::collection::vec(-1e6f64..1e6, 1..6),
    ) {
        let dim = xs.len().min(ys.len());
        let x = Point::new(xs[..dim].to_vec()).unwrap();
        let y = Point::new(ys[..dim].to_vec()).unwrap();
        for metric in [MetricSpec::Euclidean, MetricSpec::L1, MetricSpec::Linf] {
            let fwd: f64 = metric.distance(&x, &y).unwrap();
            let bwd: f64 = metric.distance(&y, &x).unwrap();
            prop_assert_eq!(fwd.to_bits(), bwd.to_bits());
            prop_assert!(fwd >= 0.0);
            prop_assert_eq!(metric.distance(&x, &x).unwrap(), 0.0);
        }
    }

    #[test]
    fn soft_threshold_shrinks_toward_zero(v in -1e6f64..1e6, t in 0.0f64..1e3) {
        let s = soft_threshold(v, t);
        prop_assert!(s.abs() <= v.abs());
        prop_assert!(s == 0.0 || s.signum() == v.signum());
        prop_assert!((v.abs() - t).max(0.0) - s.abs() <= 1e-9 * (1.0 + v.abs()));
    }

    #[test]
    fn km_step_is_between_x_and_tx(
        x in -100.0f64..100.0,
        alpha in 0.01f64..0.99,
    ) {
        // For T = -id the step lands at (1 - 2 alpha) x, between x and -x.
        let out = km_step(&MapSpec::scale(-1.0), &Point::scalar(x).unwrap(), alpha).unwrap();
        let lo = (-x).min(x);
        let hi = (-x).max(x);
        prop_assert!(out[0] >= lo - 1e-12 && out[0] <= hi + 1e-12);
    }
}
