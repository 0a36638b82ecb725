//! Numerical certification of fixed-point existence for iterative maps via
//! orbit summability: run the forward orbit, accumulate the gap series
//! `d(x_n, x_{n+1})`, and decide CONVERGED / DIVERGENT / INCONCLUSIVE from
//! the partial displacement sums, geometric tail estimates and an
//! independently recomputed fixed-point residual. Includes Caristi-potential
//! verification along orbits and the classical non-expansive schemes
//! (contraction iteration, Krasnosel'skii-Mann, proximal point, splitting,
//! alternating projections) wired into the same certification engine.
//!
//! All numerics are generic over the scalar type (`f32`/`f64`); the `*64`
//! aliases at the crate root name the double-precision configuration used by
//! the CLI harness.

pub mod algorithms;
pub mod caristi;
pub mod certificate;
pub mod error;
pub mod map;
pub mod metric;
pub mod orbit;
pub mod scalar;

pub use algorithms::{
    alternating_projections_run, contraction_solve, douglas_rachford_run, douglas_rachford_step,
    forward_backward_step, km_run, km_step, nonexpansiveness_check, prox_step, soft_threshold,
    AltProjRun, ContractionSolve, ConvexSetSpec, DouglasRachfordRun, ExpansionViolation, KmRun,
    NonexpansivenessReport, ProxSpec, RelaxationSchedule,
};
pub use caristi::{
    canonical_caristi_identity_check, check_caristi_step, eval_potential, orbit_potential,
    verify_along_orbit, CaristiReport, OrbitPotentialValue, PotentialKind, PotentialSpec,
    TruncationPolicy,
};
pub use certificate::{certify, CertifyPolicy, SummabilityCertificate, Verdict};
pub use error::{Error, Result};
pub use map::{eval_map, MapClass, MapKind, MapSpec, ScalarFormula};
pub use metric::{
    check_metric_axioms, dot, l2_norm, AxiomKind, AxiomReport, AxiomViolation, MetricSpec, Point,
};
pub use orbit::{
    cauchy_bound, fixed_point_residual, orbit_gap, run_orbit, OrbitTrace, RunOptions, StopReason,
};
pub use scalar::Scalar;

// Concrete double-precision aliases.
pub type Point64 = Point<f64>;
pub type MetricSpec64 = MetricSpec<f64>;
pub type MapSpec64 = MapSpec<f64>;
pub type MapClass64 = MapClass<f64>;
pub type OrbitTrace64 = OrbitTrace<f64>;
pub type RunOptions64 = RunOptions<f64>;
pub type CertifyPolicy64 = CertifyPolicy<f64>;
pub type SummabilityCertificate64 = SummabilityCertificate<f64>;
pub type PotentialSpec64 = PotentialSpec<f64>;
pub type PotentialKind64 = PotentialKind<f64>;
pub type TruncationPolicy64 = TruncationPolicy<f64>;
pub type CaristiReport64 = CaristiReport<f64>;
pub type ConvexSetSpec64 = ConvexSetSpec<f64>;
pub type ProxSpec64 = ProxSpec<f64>;
pub type RelaxationSchedule64 = RelaxationSchedule<f64>;
pub type AxiomReport64 = AxiomReport<f64>;
