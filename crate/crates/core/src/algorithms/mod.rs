//! The non-expansive algorithm family, each exposed as a map step or a
//! schedule-aware driver so the orbit engine can certify its convergence:
//! contraction iteration, Krasnosel'skii-Mann relaxation, proximal steps,
//! forward-backward and Douglas-Rachford splitting, alternating projections.

pub mod altproj;
pub mod contraction;
pub mod convex;
pub mod km;
pub mod nonexpansive;
pub mod prox;
pub mod schedule;
pub mod splitting;

pub use altproj::{alternating_projections_run, AltProjRun};
pub use contraction::{contraction_solve, ContractionSolve};
pub use convex::ConvexSetSpec;
pub use km::{km_run, km_step, KmRun};
pub use nonexpansive::{nonexpansiveness_check, ExpansionViolation, NonexpansivenessReport};
pub use prox::{prox_step, soft_threshold, ProxSpec};
pub use schedule::RelaxationSchedule;
pub use splitting::{
    douglas_rachford_run, douglas_rachford_step, forward_backward_step, DouglasRachfordRun,
};
