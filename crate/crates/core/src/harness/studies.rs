use serde::Serialize;

use crate::distance::DistanceMetric;
use crate::error::{Error, Result};
use crate::objectives::ObjectiveId;
use crate::selection::{ProbabilityBasis, SelectionMethod};

use super::config::{ExperimentConfig, OptimizerPreset};
use super::experiment::{flush_failure, run_trials, thread_pool, AggregateResult};

pub const SELECTION_DIM: usize = 30;
pub const METRICS_DIM: usize = 2;
pub const EVAPORATION_DIM: usize = 20;
pub const COMPARE_DIM: usize = 20;

pub const DEFAULT_XI_GRID: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyKind {
    Selection,
    Metrics,
    Evaporation,
    Compare,
}

impl StudyKind {
    pub fn name(self) -> &'static str {
        match self {
            StudyKind::Selection => "selection",
            StudyKind::Metrics => "metrics",
            StudyKind::Evaporation => "evaporation",
            StudyKind::Compare => "compare",
        }
    }
}

/// One configuration of a study, aggregated over the function suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub label: String,
    /// Set for evaporation rows.
    pub xi: Option<f64>,
    /// Mean of the per-function means.
    pub grand_mean: f64,
    pub cells: Vec<AggregateResult>,
}

impl StudyRow {
    pub fn cell(&self, function: ObjectiveId) -> Option<&AggregateResult> {
        self.cells.iter().find(|c| c.function == function)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyTable {
    pub study: StudyKind,
    pub dim: usize,
    pub functions: Vec<ObjectiveId>,
    pub rows: Vec<StudyRow>,
}

impl StudyTable {
    pub fn row(&self, label: &str) -> Option<&StudyRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Row with the smallest grand mean.
    pub fn best_row(&self) -> Option<&StudyRow> {
        self.rows
            .iter()
            .min_by(|a, b| a.grand_mean.total_cmp(&b.grand_mean))
    }

    /// The ξ of the best evaporation row.
    pub fn argmin_xi(&self) -> Option<f64> {
        self.best_row().and_then(|r| r.xi)
    }

    pub fn aggregates(&self) -> impl Iterator<Item = &AggregateResult> {
        self.rows.iter().flat_map(|r| r.cells.iter())
    }
}

struct Variant {
    label: String,
    xi: Option<f64>,
    config: ExperimentConfig,
}

fn suite(config: &ExperimentConfig) -> Vec<ObjectiveId> {
    config
        .functions
        .clone()
        .unwrap_or_else(|| ObjectiveId::SUITE.to_vec())
}

fn run_study(
    base: &ExperimentConfig,
    study: StudyKind,
    dim: usize,
    variants: Vec<Variant>,
) -> Result<StudyTable> {
    base.validate()?;
    let functions = suite(base);
    if functions.is_empty() {
        return Err(Error::Config("study needs at least one function".into()));
    }
    let pool = thread_pool(base.jobs)?;
    let mut rows = Vec::with_capacity(variants.len());
    let mut done: Vec<AggregateResult> = Vec::new();
    for variant in variants {
        let setup = variant.config.optimizer_setup(dim)?;
        let mut cells = Vec::with_capacity(functions.len());
        for &function in &functions {
            let objective = variant.config.objective_for(function, dim)?;
            match run_trials(&variant.config, &objective, &setup, &variant.label, &pool) {
                Ok(records) => {
                    let cell = AggregateResult::from_records(function, &variant.label, records)?;
                    done.push(cell.clone());
                    cells.push(cell);
                }
                Err(mut failure) => {
                    let mut partial: Vec<_> = done.into_iter().flat_map(|a| a.records).collect();
                    partial.append(&mut failure.completed);
                    failure.completed = partial;
                    return Err(flush_failure(base, failure));
                }
            }
        }
        let grand_mean = cells.iter().map(|c| c.mean).sum::<f64>() / cells.len() as f64;
        rows.push(StudyRow {
            label: variant.label,
            xi: variant.xi,
            grand_mean,
            cells,
        });
    }
    Ok(StudyTable {
        study,
        dim,
        functions,
        rows,
    })
}

fn aco_variant(base: &ExperimentConfig) -> ExperimentConfig {
    ExperimentConfig {
        optimizer: OptimizerPreset::AcoCustom,
        ..base.clone()
    }
}

/// The six {RWS, SUS, BHS} × {FitVal, Weight} strategies with Manhattan distance.
pub fn study_selection(config: &ExperimentConfig) -> Result<StudyTable> {
    let dim = config.dim.unwrap_or(SELECTION_DIM);
    let mut variants = Vec::new();
    for method in SelectionMethod::ALL {
        for basis in ProbabilityBasis::ALL {
            let cfg = ExperimentConfig {
                selection: Some(method),
                basis: Some(basis),
                metric: Some(DistanceMetric::MANHATTAN),
                ..aco_variant(config)
            };
            let label = cfg
                .optimizer_setup(dim)?
                .aco_params()
                .map(|p| p.selection.label());
            variants.push(Variant {
                label: label.unwrap_or_default(),
                xi: None,
                config: cfg,
            });
        }
    }
    run_study(config, StudyKind::Selection, dim, variants)
}

/// The ten distance metrics under RWS(FitVal).
pub fn study_metrics(config: &ExperimentConfig) -> Result<StudyTable> {
    let dim = config.dim.unwrap_or(METRICS_DIM);
    let variants = DistanceMetric::ALL
        .iter()
        .map(|&metric| Variant {
            label: metric.name(),
            xi: None,
            config: ExperimentConfig {
                selection: Some(SelectionMethod::Rws),
                basis: Some(ProbabilityBasis::FitVal),
                metric: Some(metric),
                ..aco_variant(config)
            },
        })
        .collect();
    run_study(config, StudyKind::Metrics, dim, variants)
}

/// RWS(FitVal) with squared Euclidean distance over a grid of ξ.
pub fn study_evaporation(config: &ExperimentConfig, xi_list: &[f64]) -> Result<StudyTable> {
    if xi_list.is_empty() {
        return Err(Error::Config("xi list is empty".into()));
    }
    if let Some(bad) = xi_list.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::Config(format!("xi={bad} must be > 0")));
    }
    let dim = config.dim.unwrap_or(EVAPORATION_DIM);
    let variants = xi_list
        .iter()
        .map(|&xi| Variant {
            label: format!("xi={xi}"),
            xi: Some(xi),
            config: ExperimentConfig {
                xi,
                selection: Some(SelectionMethod::Rws),
                basis: Some(ProbabilityBasis::FitVal),
                metric: Some(DistanceMetric::SquaredEuclidean),
                ..aco_variant(config)
            },
        })
        .collect();
    run_study(config, StudyKind::Evaporation, dim, variants)
}

/// Classical ACO, ACO*, PSO and DE on the suite; one row per optimizer.
pub fn study_compare(config: &ExperimentConfig) -> Result<StudyTable> {
    let dim = config.dim.unwrap_or(COMPARE_DIM);
    let variants = [
        OptimizerPreset::Aco,
        OptimizerPreset::AcoStar,
        OptimizerPreset::Pso,
        OptimizerPreset::De,
    ]
    .into_iter()
    .map(|optimizer| Variant {
        label: optimizer.name().to_string(),
        xi: None,
        config: ExperimentConfig {
            optimizer,
            selection: None,
            basis: None,
            metric: None,
            ..config.clone()
        },
    })
    .collect();
    run_study(config, StudyKind::Compare, dim, variants)
}
