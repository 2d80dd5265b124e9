use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::objectives::{ObjectiveId, ObjectiveSpec};
use crate::selection::SelectionTrace;

use super::config::{ExperimentConfig, OptimizerSetup};

/// One row of the per-trial table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub function: ObjectiveId,
    pub optimizer: String,
    /// Empty for PSO and DE.
    pub selection: String,
    pub basis: String,
    pub metric: String,
    pub xi: Option<f64>,
    pub dim: usize,
    pub trial: usize,
    pub seed: u64,
    pub final_best: f64,
    pub iterations: usize,
    pub elapsed_ms: f64,
    #[serde(skip)]
    pub trace: Option<SelectionTrace>,
}

/// Mean and population variance of `final_best` over the trials of one
/// (function, optimizer) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateResult {
    pub function: ObjectiveId,
    pub optimizer: String,
    pub mean: f64,
    pub variance: f64,
    pub trials: usize,
    pub records: Vec<TrialRecord>,
}

impl AggregateResult {
    /// Aggregates `records`, which must be nonempty.
    pub fn from_records(
        function: ObjectiveId,
        optimizer: impl Into<String>,
        records: Vec<TrialRecord>,
    ) -> Result<Self> {
        let values: Vec<f64> = records.iter().map(|r| r.final_best).collect();
        let (mean, variance) = mean_variance(&values)
            .ok_or_else(|| Error::Argument("cannot aggregate zero trials".into()))?;
        Ok(Self {
            function,
            optimizer: optimizer.into(),
            mean,
            variance,
            trials: records.len(),
            records,
        })
    }

    pub fn traces(&self) -> impl Iterator<Item = (usize, &SelectionTrace)> {
        self.records
            .iter()
            .filter_map(|r| r.trace.as_ref().map(|t| (r.trial, t)))
    }
}

/// Mean and population variance (divide by n). `None` for an empty slice.
pub fn mean_variance(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    // summation rounding can push the mean of near-equal values just outside
    let mean = if lo <= hi { mean.clamp(lo, hi) } else { mean };
    Some((mean, variance.max(0.0)))
}

/// A trial failure together with every record completed before it.
#[derive(Debug)]
pub struct ExperimentFailure {
    pub completed: Vec<TrialRecord>,
    pub trial: usize,
    pub error: Error,
}

/// Thread pool sized by `jobs` (0 = all cores).
pub fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))
}

/// Runs `config.trials` seeded trials of `setup` on `objective` inside `pool`.
///
/// Records come back in trial order however the pool schedules them. On
/// failure, the records of the trials before the first failing one are kept.
pub fn run_trials(
    config: &ExperimentConfig,
    objective: &ObjectiveSpec,
    setup: &OptimizerSetup,
    label: &str,
    pool: &rayon::ThreadPool,
) -> std::result::Result<Vec<TrialRecord>, ExperimentFailure> {
    let outcomes: Vec<Result<TrialRecord>> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = config.seed_for(trial);
                let result = setup.run(objective, seed)?;
                let aco = setup.aco_params();
                Ok(TrialRecord {
                    function: objective.id,
                    optimizer: label.to_string(),
                    selection: aco
                        .map(|p| p.selection.method.name().to_string())
                        .unwrap_or_default(),
                    basis: aco
                        .map(|p| p.selection.basis.name().to_string())
                        .unwrap_or_default(),
                    metric: aco.map(|p| p.metric.name()).unwrap_or_default(),
                    xi: aco.map(|p| p.xi.value()),
                    dim: objective.dimension,
                    trial,
                    seed,
                    final_best: result.final_best,
                    iterations: result.iterations(),
                    elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
                    trace: result.selection_trace,
                })
            })
            .collect()
    });
    let mut completed = Vec::with_capacity(outcomes.len());
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(record) => completed.push(record),
            Err(error) => {
                return Err(ExperimentFailure {
                    completed,
                    trial,
                    error,
                })
            }
        }
    }
    Ok(completed)
}

/// Runs one (function, optimizer) experiment as configured.
///
/// When `config.out` is set the tables are written there; a failing trial
/// leaves the partial per-trial table plus a `FAILED` marker and returns the
/// trial's error.
pub fn run_experiment(config: &ExperimentConfig) -> Result<AggregateResult> {
    config.validate()?;
    let objective = config.objective()?;
    let setup = config.optimizer_setup(objective.dimension)?;
    let pool = thread_pool(config.jobs)?;
    match run_trials(config, &objective, &setup, setup.label(), &pool) {
        Ok(records) => {
            let agg = AggregateResult::from_records(objective.id, setup.label(), records)?;
            if let Some(dir) = &config.out {
                super::export::write_experiment(dir, config.format, std::slice::from_ref(&agg))?;
            }
            Ok(agg)
        }
        Err(failure) => Err(flush_failure(config, failure)),
    }
}

/// Writes what finished before `failure` and returns its error.
pub(crate) fn flush_failure(config: &ExperimentConfig, failure: ExperimentFailure) -> Error {
    let ExperimentFailure {
        completed,
        trial,
        error,
    } = failure;
    let message = format!("trial {trial} failed: {error}");
    if let Some(dir) = &config.out {
        if let Err(io) = super::export::write_failure(dir, &completed, &message) {
            return Error::Config(format!(
                "{message}; writing partial results also failed: {io}"
            ));
        }
    }
    error
}
