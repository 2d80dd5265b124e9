//! ACO main loop and the PSO / DE baselines.

mod aco;
mod de;
mod pso;

use std::time::Duration;

use crate::selection::SelectionTrace;

pub use aco::{aco_run, aco_run_observed, AcoParams};
pub use de::{de_run, DeParams};
pub use pso::{pso_run, PsoParams};

/// Outcome of one seeded optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    /// Best-so-far fitness after each iteration; nonincreasing.
    pub best_trajectory: Vec<f64>,
    /// Best fitness of the initial population or archive.
    pub initial_best: f64,
    pub final_best: f64,
    pub final_solution: Vec<f64>,
    pub elapsed: Duration,
    pub selection_trace: Option<SelectionTrace>,
    /// Bray-Curtis evaluations whose denominator vanished (ACO only).
    pub degenerate_distances: u64,
}

impl TrialResult {
    pub fn iterations(&self) -> usize {
        self.best_trajectory.len()
    }
}
