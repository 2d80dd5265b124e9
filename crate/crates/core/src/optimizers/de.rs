use std::time::Instant;

use crate::error::{Error, Result, RunPosition};
use crate::objectives::Objective;
use crate::rng::RandomSource;

use super::pso::argmin;
use super::TrialResult;

/// DE/rand-to-best/1/bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeParams {
    pub population: usize,
    /// Differential weight F.
    pub weight_factor: f64,
    /// Crossover rate CR in `[0, 1]`.
    pub crossover_factor: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            population: 10,
            weight_factor: 0.7,
            crossover_factor: 0.9,
            max_iterations: 1000,
            seed: 0,
        }
    }
}

impl DeParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 {
            return Err(Error::Config(format!(
                "population={} must be >= 4",
                self.population
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be >= 1".into()));
        }
        if !self.weight_factor.is_finite() {
            return Err(Error::Config("weight factor must be finite".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_factor) {
            return Err(Error::Config(format!(
                "crossover factor {} outside [0, 1]",
                self.crossover_factor
            )));
        }
        Ok(())
    }
}

/// Binomial crossover: each coordinate comes from `mutant` with probability
/// `cr`, and coordinate `forced` always does.
fn binomial_crossover(
    target: &[f64],
    mutant: &[f64],
    cr: f64,
    forced: usize,
    rng: &mut RandomSource,
) -> Vec<f64> {
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(d, (&t, &v))| {
            if d == forced || rng.uniform() < cr {
                v
            } else {
                t
            }
        })
        .collect()
}

/// Two distinct indices in `0..size`, both different from `exclude`.
fn distinct_pair(size: usize, exclude: usize, rng: &mut RandomSource) -> (usize, usize) {
    let r1 = loop {
        let r = rng.index(size);
        if r != exclude {
            break r;
        }
    };
    let r2 = loop {
        let r = rng.index(size);
        if r != exclude && r != r1 {
            break r;
        }
    };
    (r1, r2)
}

pub fn de_run<O: Objective + ?Sized>(
    params: &DeParams,
    objective: &O,
    rng: &mut RandomSource,
) -> Result<TrialResult> {
    params.validate()?;
    let start = Instant::now();
    let n = objective.dimension();
    let bounds = objective.bounds();
    let size = params.population;
    let f = params.weight_factor;

    let mut pop = Vec::with_capacity(size);
    let mut fit = Vec::with_capacity(size);
    for p in 0..size {
        let x: Vec<f64> = (0..n)
            .map(|_| rng.uniform_in(bounds.min, bounds.max))
            .collect();
        fit.push(objective.evaluate(&x).map_err(|e| {
            e.at(RunPosition {
                member: Some(p),
                ..RunPosition::init()
            })
        })?);
        pop.push(x);
    }
    let initial_best = fit[argmin(&fit)];
    let mut trajectory = Vec::with_capacity(params.max_iterations);

    for t in 0..params.max_iterations {
        let best = pop[argmin(&fit)].clone();
        let mut next_pop = pop.clone();
        let mut next_fit = fit.clone();
        for i in 0..size {
            let (r1, r2) = distinct_pair(size, i, rng);
            let x = &pop[i];
            let mutant: Vec<f64> = (0..n)
                .map(|d| x[d] + f * (best[d] - x[d]) + f * (pop[r1][d] - pop[r2][d]))
                .collect();
            let forced = rng.index(n);
            let child = binomial_crossover(x, &mutant, params.crossover_factor, forced, rng);
            let child_fit = objective
                .evaluate(&child)
                .map_err(|e| e.at(RunPosition::at(t, Some(i), None)))?;
            if child_fit <= fit[i] {
                next_pop[i] = child;
                next_fit[i] = child_fit;
            }
        }
        pop = next_pop;
        fit = next_fit;
        trajectory.push(fit[argmin(&fit)]);
    }

    let b = argmin(&fit);
    Ok(TrialResult {
        best_trajectory: trajectory,
        initial_best,
        final_best: fit[b],
        final_solution: pop.swap_remove(b),
        elapsed: start.elapsed(),
        selection_trace: None,
        degenerate_distances: 0,
    })
}
