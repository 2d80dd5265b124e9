//! The solution archive: the pheromone model of continuous ACO.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::objectives::{Bounds, Objective};
use crate::rng::RandomSource;

/// A point in the search space together with its objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    variables: Vec<f64>,
    fitness: f64,
}

impl Solution {
    /// Evaluates `variables` and wraps the result.
    pub fn evaluate<O: Objective + ?Sized>(variables: Vec<f64>, objective: &O) -> Result<Self> {
        if variables.iter().any(|v| !v.is_finite()) {
            return Err(Error::Evaluation {
                message: "solution has non-finite variables".into(),
                input: variables,
            });
        }
        let fitness = objective.evaluate(&variables)?;
        Self::from_parts(variables, fitness)
    }

    /// Builds a solution from an already-computed fitness.
    pub fn from_parts(variables: Vec<f64>, fitness: f64) -> Result<Self> {
        if !fitness.is_finite() {
            return Err(Error::Evaluation {
                message: format!("non-finite fitness {fitness}"),
                input: variables,
            });
        }
        Ok(Self { variables, fitness })
    }

    pub fn variables(&self) -> &[f64] {
        &self.variables
    }

    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    pub fn into_variables(self) -> Vec<f64> {
        self.variables
    }
}

fn by_fitness(a: &Solution, b: &Solution) -> Ordering {
    a.fitness.total_cmp(&b.fitness)
}

/// `k` solutions kept sorted ascending by fitness. Index 0 is the best (rank 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    solutions: Vec<Solution>,
    dimension: usize,
}

impl Archive {
    /// Builds an archive from evaluated solutions, sorting them.
    pub fn from_solutions(mut solutions: Vec<Solution>) -> Result<Self> {
        if solutions.len() < 2 {
            return Err(Error::Config(format!(
                "archive needs at least 2 solutions, got {}",
                solutions.len()
            )));
        }
        let dimension = solutions[0].variables.len();
        if dimension == 0 || solutions.iter().any(|s| s.variables.len() != dimension) {
            return Err(Error::Argument(
                "archive solutions must share a nonzero dimension".into(),
            ));
        }
        solutions.sort_by(by_fitness);
        Ok(Self {
            solutions,
            dimension,
        })
    }

    /// `k` uniformly random solutions in `bounds`, evaluated and sorted.
    pub fn init<O: Objective + ?Sized>(
        k: usize,
        n: usize,
        bounds: Bounds,
        objective: &O,
        rng: &mut RandomSource,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::Config(format!("archive size k={k} must be >= 2")));
        }
        if n == 0 {
            return Err(Error::Config("dimension n must be >= 1".into()));
        }
        let bounds = Bounds::new(bounds.min, bounds.max)?;
        let mut solutions = Vec::with_capacity(k);
        for _ in 0..k {
            let x: Vec<f64> = (0..n)
                .map(|_| rng.uniform_in(bounds.min, bounds.max))
                .collect();
            solutions.push(Solution::evaluate(x, objective)?);
        }
        Self::from_solutions(solutions)
    }

    /// Pools the archive with `newcomers`, sorts, and keeps the best `k`.
    ///
    /// Sorting is stable over `incumbents ++ newcomers`, so on equal fitness an
    /// incumbent stays ahead of a newcomer, and newcomers keep their order.
    pub fn update(&mut self, newcomers: Vec<Solution>) -> Result<()> {
        if newcomers.is_empty() {
            return Err(Error::Argument(
                "update needs at least one new solution".into(),
            ));
        }
        for s in &newcomers {
            if s.variables.len() != self.dimension {
                return Err(Error::Argument(format!(
                    "new solution has {} variables, archive dimension is {}",
                    s.variables.len(),
                    self.dimension
                )));
            }
            if !s.fitness.is_finite() {
                return Err(Error::Evaluation {
                    message: "new solution is not evaluated".into(),
                    input: s.variables.clone(),
                });
            }
        }
        let k = self.solutions.len();
        self.solutions.extend(newcomers);
        self.solutions.sort_by(by_fitness);
        self.solutions.truncate(k);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    pub fn get(&self, rank_index: usize) -> &Solution {
        &self.solutions[rank_index]
    }

    pub fn best(&self) -> &Solution {
        &self.solutions[0]
    }

    pub fn fitnesses(&self) -> Vec<f64> {
        self.solutions.iter().map(|s| s.fitness).collect()
    }

    /// Value of variable `dim` across all members, in rank order.
    pub fn column(&self, dim: usize) -> impl Iterator<Item = f64> + '_ {
        self.solutions.iter().map(move |s| s.variables[dim])
    }

    pub fn is_sorted(&self) -> bool {
        self.solutions
            .windows(2)
            .all(|w| w[0].fitness <= w[1].fitness)
    }
}

/// Draws from `N(mu, sigma^2)`. `sigma == 0` returns `mu` exactly.
pub fn sample_gaussian(rng: &mut RandomSource, mu: f64, sigma: f64) -> Result<f64> {
    if !mu.is_finite() || !sigma.is_finite() {
        return Err(Error::Argument(format!(
            "gaussian parameters must be finite (mu={mu}, sigma={sigma})"
        )));
    }
    if sigma < 0.0 {
        return Err(Error::Argument(format!("sigma={sigma} must be >= 0")));
    }
    if sigma == 0.0 {
        return Ok(mu);
    }
    Ok(mu + sigma * rng.standard_normal())
}
