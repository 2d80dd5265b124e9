use crate::distance::DistanceMetric;
use crate::error::{Error, Result};
use crate::objectives::{registry, ObjectiveId};
use crate::optimizers::{aco_run, AcoParams};
use crate::rng::RandomSource;
use crate::selection::{ProbabilityBasis, SelectionMethod, SelectionSpec, SelectionTrace};

use super::config::ExperimentConfig;

pub const SELMAP_DIM: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionMapSeries {
    pub label: String,
    pub trace: SelectionTrace,
}

/// One traced ACO iteration per selection strategy on Ackley, all from the
/// same seed. Uses `config.k`, `m`, `xi`, `q`, `base_seed` and `dim`
/// (default 30).
pub fn selection_map_traces(config: &ExperimentConfig) -> Result<Vec<SelectionMapSeries>> {
    let n = config.dim.unwrap_or(SELMAP_DIM);
    let objective = registry(ObjectiveId::Ackley, n)?.with_formula(config.formula);
    let mut out = Vec::with_capacity(6);
    for method in SelectionMethod::ALL {
        for basis in ProbabilityBasis::ALL {
            let selection = SelectionSpec::new(method, basis, config.q)?;
            let params = AcoParams {
                k: config.k,
                m: config.m,
                n,
                xi: crate::distance::EvaporationRate::new(config.xi)?,
                selection,
                metric: config.metric.unwrap_or(DistanceMetric::MANHATTAN),
                max_iterations: 1,
                seed: config.base_seed,
                trace_iterations: 1,
                clamp_samples: config.clamp_samples,
            };
            let result = aco_run(
                &params,
                &objective,
                &mut RandomSource::new(config.base_seed),
            )?;
            let trace = result
                .selection_trace
                .ok_or_else(|| Error::Config("tracing produced no records".into()))?;
            out.push(SelectionMapSeries {
                label: selection.label(),
                trace,
            });
        }
    }
    Ok(out)
}
