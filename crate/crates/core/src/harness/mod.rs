//! Multi-trial experiment runner, the four parameter studies, and table /
//! plot export.

mod config;
mod experiment;
pub mod export;
mod selmap;
mod studies;

pub use config::{ExperimentConfig, OptimizerPreset, OptimizerSetup, OutputFormat, DEFAULT_DIM};
pub use experiment::{
    mean_variance, run_experiment, run_trials, thread_pool, AggregateResult, ExperimentFailure,
    TrialRecord,
};
pub use selmap::{selection_map_traces, SelectionMapSeries, SELMAP_DIM};
pub use studies::{
    study_compare, study_evaporation, study_metrics, study_selection, StudyKind, StudyRow,
    StudyTable, COMPARE_DIM, DEFAULT_XI_GRID, EVAPORATION_DIM, METRICS_DIM, SELECTION_DIM,
};
