//! η-cone metric spaces made computable.
//!
//! A space pairs a point set with a vector-valued distance `d` in an ordered
//! finite-dimensional space and a scale function `η ≥ 1` weakening the
//! triangle inequality to `d(x,z) ⪯ η(x,z)·[d(x,y) + d(y,z)]`. The crate
//! checks those axioms, derives and classifies the real-valued view
//! `D = ‖d‖`, probes sequence topology, and runs fixed-point iterations with
//! every hypothesis measured rather than assumed.
//!
//! ```
//! use etacone::{check_axioms, fixtures, SamplingPlan};
//!
//! let entry = fixtures::fixture("three_point_cone").unwrap();
//! let report = check_axioms(&entry.space, 0.0, &SamplingPlan::default()).unwrap();
//! assert!(report.all_ok());
//! ```

pub mod axioms;
pub mod cone;
pub mod error;
pub mod fixed_point;
pub mod fixtures;
pub mod metric;
pub mod space;
pub mod table;
pub mod topology;

#[cfg(feature = "cli")]
pub mod cli;

pub use axioms::{check_axioms, check_axioms_sin_variant, Axiom, AxiomReport, TripleCheck, Violation};
pub use cone::{normal_constant_estimate, Cone, ConeSpace, Norm, Vector, DEFAULT_TOL};
pub use error::{Error, Result};
pub use fixed_point::{
    cauchy_rate_check, estimate_contraction, orbit_eta_condition, partial_sums, picard_orbit, solve_banach,
    solve_banach_iterate_power, solve_hardy_rogers, solve_strict_compact, tail_bound, Check, CheckStatus, HardyRogers,
    OrbitTrace, SelfMap, SolveConfig, SolveReport, SolveStatus,
};
pub use metric::{
    chain_triangle_bound, classify, derive_eta_metric, minimal_eta, Classification, DerivedEtaMetric, MetricClass,
    RealTable,
};
pub use space::{EtaConeSpace, Point, PointSet, PointValue, SamplingPlan};
pub use topology::{
    ball_contains, closure_contains, detect_metric_discontinuity, is_cauchy_prefix, is_convergent, local_base,
    ConvergenceStatus, ConvergenceVerdict, Schedule, SequencePrefix,
};
