//! Continuous ant colony optimization over a sorted solution archive, with
//! interchangeable selection strategies (RWS, SUS, BHS) and per-dimension
//! distance metrics, plus PSO and DE baselines and a multi-trial experiment
//! harness.
//!
//! ```
//! use aco_core::{aco_run, registry, AcoParams, ObjectiveId, RandomSource};
//!
//! let sphere = registry(ObjectiveId::Sphere, 5).unwrap();
//! let mut params = AcoParams::improved(5);
//! params.max_iterations = 200;
//! let result = aco_run(&params, &sphere, &mut RandomSource::new(7)).unwrap();
//! assert!(result.final_best <= result.initial_best);
//! ```

pub mod archive;
pub mod distance;
pub mod error;
pub mod harness;
pub mod objectives;
pub mod optimizers;
pub mod rng;
pub mod selection;

pub use archive::{sample_gaussian, Archive, Solution};
pub use distance::{per_dim_distance, sigma, DistanceMetric, EvaporationRate, PerDimDistance};
pub use error::{Error, Result};
pub use objectives::{
    registry, rmse, Bounds, ErrorVector, Formula, Objective, ObjectiveId, ObjectiveSpec,
};
pub use optimizers::{aco_run, de_run, pso_run, AcoParams, DeParams, PsoParams, TrialResult};
pub use rng::RandomSource;
pub use selection::{
    ProbabilityBasis, ProbabilityVector, SelectionMethod, SelectionSpec, SelectionTrace,
};
