use std::time::Instant;

use crate::error::{Error, Result, RunPosition};
use crate::objectives::Objective;
use crate::rng::RandomSource;

use super::TrialResult;

/// Global-best particle swarm with linearly decreasing inertia.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub swarm_size: usize,
    /// Cognitive influence.
    pub c1: f64,
    /// Social influence.
    pub c2: f64,
    pub inertia_high: f64,
    pub inertia_low: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            swarm_size: 10,
            c1: 2.0,
            c2: 2.0,
            inertia_high: 1.0,
            inertia_low: 0.0,
            max_iterations: 1000,
            seed: 0,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(Error::Config(format!(
                "swarm_size={} must be >= 2",
                self.swarm_size
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be >= 1".into()));
        }
        let coeffs = [self.c1, self.c2, self.inertia_high, self.inertia_low];
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Config("PSO coefficients must be finite".into()));
        }
        if self.inertia_high < self.inertia_low {
            return Err(Error::Config(format!(
                "inertia_high={} < inertia_low={}",
                self.inertia_high, self.inertia_low
            )));
        }
        Ok(())
    }

    /// Inertia at iteration `t`, moving linearly from high (t = 0) to low (last iteration).
    pub fn inertia(&self, t: usize) -> f64 {
        if self.max_iterations <= 1 {
            return self.inertia_high;
        }
        let frac = t as f64 / (self.max_iterations - 1) as f64;
        self.inertia_high - (self.inertia_high - self.inertia_low) * frac
    }
}

pub fn pso_run<O: Objective + ?Sized>(
    params: &PsoParams,
    objective: &O,
    rng: &mut RandomSource,
) -> Result<TrialResult> {
    params.validate()?;
    let start = Instant::now();
    let n = objective.dimension();
    let bounds = objective.bounds();
    let size = params.swarm_size;

    let mut positions = Vec::with_capacity(size);
    let mut fitness = Vec::with_capacity(size);
    for p in 0..size {
        let x: Vec<f64> = (0..n)
            .map(|_| rng.uniform_in(bounds.min, bounds.max))
            .collect();
        let f = objective.evaluate(&x).map_err(|e| {
            e.at(RunPosition {
                member: Some(p),
                ..RunPosition::init()
            })
        })?;
        positions.push(x);
        fitness.push(f);
    }
    let mut velocities = vec![vec![0.0; n]; size];
    let mut pbest = positions.clone();
    let mut pbest_fit = fitness.clone();
    let mut g = argmin(&pbest_fit);
    let mut gbest = pbest[g].clone();
    let mut gbest_fit = pbest_fit[g];
    let initial_best = gbest_fit;
    let mut trajectory = Vec::with_capacity(params.max_iterations);

    for t in 0..params.max_iterations {
        let w = params.inertia(t);
        for p in 0..size {
            let (x, v) = (&mut positions[p], &mut velocities[p]);
            for d in 0..n {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                v[d] = w * v[d]
                    + params.c1 * r1 * (pbest[p][d] - x[d])
                    + params.c2 * r2 * (gbest[d] - x[d]);
                x[d] += v[d];
            }
            fitness[p] = objective
                .evaluate(x)
                .map_err(|e| e.at(RunPosition::at(t, Some(p), None)))?;
        }
        for p in 0..size {
            if fitness[p] < pbest_fit[p] {
                pbest_fit[p] = fitness[p];
                pbest[p].clone_from(&positions[p]);
            }
        }
        g = argmin(&pbest_fit);
        if pbest_fit[g] < gbest_fit {
            gbest_fit = pbest_fit[g];
            gbest.clone_from(&pbest[g]);
        }
        trajectory.push(gbest_fit);
    }

    Ok(TrialResult {
        best_trajectory: trajectory,
        initial_best,
        final_best: gbest_fit,
        final_solution: gbest,
        elapsed: start.elapsed(),
        selection_trace: None,
        degenerate_distances: 0,
    })
}

pub(super) fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{registry, ObjectiveId};

    #[test]
    fn inertia_schedule() {
        let p = PsoParams {
            max_iterations: 11,
            ..PsoParams::default()
        };
        assert_eq!(p.inertia(0), 1.0);
        assert!((p.inertia(5) - 0.5).abs() < 1e-15);
        assert_eq!(p.inertia(10), 0.0);
    }

    #[test]
    fn frozen_swarm_keeps_initial_best() {
        let p = PsoParams {
            c1: 0.0,
            c2: 0.0,
            inertia_high: 0.0,
            inertia_low: 0.0,
            max_iterations: 50,
            ..PsoParams::default()
        };
        let f = registry(ObjectiveId::Sphere, 5).unwrap();
        let r = pso_run(&p, &f, &mut RandomSource::new(2)).unwrap();
        assert_eq!(r.final_best, r.initial_best);
        assert!(r.best_trajectory.iter().all(|&v| v == r.initial_best));
    }

    #[test]
    fn trajectory_nonincreasing() {
        let f = registry(ObjectiveId::Rastrigin, 10).unwrap();
        let p = PsoParams {
            max_iterations: 300,
            ..PsoParams::default()
        };
        let r = pso_run(&p, &f, &mut RandomSource::new(3)).unwrap();
        assert_eq!(r.best_trajectory.len(), 300);
        assert!(r.best_trajectory.windows(2).all(|w| w[1] <= w[0]));
        assert!(r.best_trajectory.iter().all(|v| v.is_finite()));
        assert_eq!(r.final_best, *r.best_trajectory.last().unwrap());
    }

    #[test]
    fn rejects_bad_params() {
        let f = registry(ObjectiveId::Sphere, 2).unwrap();
        let bad = PsoParams {
            inertia_high: 0.1,
            inertia_low: 0.5,
            ..PsoParams::default()
        };
        assert!(pso_run(&bad, &f, &mut RandomSource::new(0)).is_err());
        let bad = PsoParams {
            swarm_size: 1,
            ..PsoParams::default()
        };
        assert!(pso_run(&bad, &f, &mut RandomSource::new(0)).is_err());
    }
}
