use std::time::Instant;

use crate::archive::{sample_gaussian, Archive, Solution};
use crate::distance::{per_dim_distance, sigma, DistanceMetric, EvaporationRate};
use crate::error::{Error, Result, RunPosition};
use crate::objectives::Objective;
use crate::rng::RandomSource;
use crate::selection::{
    ProbabilityBasis, SelectionMethod, SelectionRecord, SelectionSpec, SelectionTrace, Selector,
    DEFAULT_Q,
};

use super::TrialResult;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcoParams {
    /// Archive size.
    pub k: usize,
    /// New solutions constructed per iteration.
    pub m: usize,
    /// Problem dimension.
    pub n: usize,
    pub xi: EvaporationRate,
    pub selection: SelectionSpec,
    pub metric: DistanceMetric,
    pub max_iterations: usize,
    pub seed: u64,
    /// Record selections for this many leading iterations (0 disables tracing).
    pub trace_iterations: usize,
    /// Clamp sampled variables into the objective's bounds.
    pub clamp_samples: bool,
}

impl AcoParams {
    /// BHS(Weight) with Manhattan distance, `xi = 0.5`, `k = m = 10`.
    pub fn classical(n: usize) -> Self {
        Self {
            k: 10,
            m: 10,
            n,
            xi: EvaporationRate::new(0.5).expect("positive"),
            selection: SelectionSpec {
                method: SelectionMethod::Bhs,
                basis: ProbabilityBasis::Weight,
                q: DEFAULT_Q,
            },
            metric: DistanceMetric::MANHATTAN,
            max_iterations: 1000,
            seed: 0,
            trace_iterations: 0,
            clamp_samples: true,
        }
    }

    /// RWS(FitVal) with squared Euclidean distance, `xi = 0.5`, `k = m = 10`.
    pub fn improved(n: usize) -> Self {
        Self {
            selection: SelectionSpec {
                method: SelectionMethod::Rws,
                basis: ProbabilityBasis::FitVal,
                q: DEFAULT_Q,
            },
            metric: DistanceMetric::SquaredEuclidean,
            ..Self::classical(n)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Config(format!("k={} must be >= 2", self.k)));
        }
        if self.m == 0 || self.n == 0 || self.max_iterations == 0 {
            return Err(Error::Config(format!(
                "m={}, n={}, max_iterations={} must all be >= 1",
                self.m, self.n, self.max_iterations
            )));
        }
        EvaporationRate::new(self.xi.value())?;
        self.selection.validate()?;
        self.metric.validate()
    }
}

/// Runs continuous ACO on `objective`.
pub fn aco_run<O: Objective + ?Sized>(
    params: &AcoParams,
    objective: &O,
    rng: &mut RandomSource,
) -> Result<TrialResult> {
    aco_run_observed(params, objective, rng, |_, _| {})
}

/// [`aco_run`] calling `observe(iteration, archive)` after each archive update.
pub fn aco_run_observed<O, F>(
    params: &AcoParams,
    objective: &O,
    rng: &mut RandomSource,
    mut observe: F,
) -> Result<TrialResult>
where
    O: Objective + ?Sized,
    F: FnMut(usize, &Archive),
{
    params.validate()?;
    if objective.dimension() != params.n {
        return Err(Error::Config(format!(
            "objective dimension {} does not match n={}",
            objective.dimension(),
            params.n
        )));
    }
    let start = Instant::now();
    let AcoParams { k, m, n, .. } = *params;
    let bounds = objective.bounds();

    let mut archive =
        Archive::init(k, n, bounds, objective, rng).map_err(|e| e.at(RunPosition::init()))?;
    let initial_best = archive.best().fitness();
    let mut selector = Selector::new(params.selection)?;
    let mut trace = (params.trace_iterations > 0).then(SelectionTrace::default);
    let mut trajectory = Vec::with_capacity(params.max_iterations);
    let mut degenerate = 0u64;

    for iteration in 0..params.max_iterations {
        selector
            .begin_iteration(&archive, m, n, rng)
            .map_err(|e| e.at(RunPosition::at(iteration, None, None)))?;
        let tracing = iteration < params.trace_iterations;
        let mut newcomers = Vec::with_capacity(m);
        for l in 0..m {
            let mut x = Vec::with_capacity(n);
            for i in 0..n {
                let here = || RunPosition::at(iteration, Some(l), Some(i));
                let j = selector.next(rng).map_err(|e| e.at(here()))?;
                if tracing {
                    if let Some(t) = trace.as_mut() {
                        t.push(SelectionRecord {
                            iteration,
                            l,
                            i,
                            selected_rank: j + 1,
                        });
                    }
                }
                let mu = archive.get(j).variables()[i];
                let d =
                    per_dim_distance(&archive, j, i, params.metric).map_err(|e| e.at(here()))?;
                degenerate += u64::from(d.degenerate);
                let s = sigma(d.value, params.xi);
                let v = sample_gaussian(rng, mu, s).map_err(|e| e.at(here()))?;
                x.push(if params.clamp_samples {
                    v.clamp(bounds.min, bounds.max)
                } else {
                    v
                });
            }
            newcomers.push(
                Solution::evaluate(x, objective)
                    .map_err(|e| e.at(RunPosition::at(iteration, Some(l), None)))?,
            );
        }
        archive
            .update(newcomers)
            .map_err(|e| e.at(RunPosition::at(iteration, None, None)))?;
        observe(iteration, &archive);
        trajectory.push(archive.best().fitness());
    }

    let best = archive.best();
    Ok(TrialResult {
        final_best: best.fitness(),
        final_solution: best.variables().to_vec(),
        best_trajectory: trajectory,
        initial_best,
        elapsed: start.elapsed(),
        selection_trace: trace,
        degenerate_distances: degenerate,
    })
}
