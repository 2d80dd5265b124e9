use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::{DistanceMetric, EvaporationRate};
use crate::error::{Error, Result};
use crate::objectives::{registry, Formula, ObjectiveId, ObjectiveSpec};
use crate::optimizers::{aco_run, de_run, pso_run, AcoParams, DeParams, PsoParams, TrialResult};
use crate::rng::RandomSource;
use crate::selection::{ProbabilityBasis, SelectionMethod, SelectionSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerPreset {
    /// BHS(Weight) + Manhattan.
    Aco,
    /// RWS(FitVal) + squared Euclidean.
    AcoStar,
    /// ACO with selection, basis and metric taken from the config.
    AcoCustom,
    Pso,
    De,
}

impl OptimizerPreset {
    pub fn name(self) -> &'static str {
        match self {
            OptimizerPreset::Aco => "aco",
            OptimizerPreset::AcoStar => "aco-star",
            OptimizerPreset::AcoCustom => "aco-custom",
            OptimizerPreset::Pso => "pso",
            OptimizerPreset::De => "de",
        }
    }
}

impl fmt::Display for OptimizerPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OptimizerPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aco" => Ok(OptimizerPreset::Aco),
            "aco-star" | "aco*" => Ok(OptimizerPreset::AcoStar),
            "aco-custom" => Ok(OptimizerPreset::AcoCustom),
            "pso" => Ok(OptimizerPreset::Pso),
            "de" => Ok(OptimizerPreset::De),
            other => Err(Error::Config(format!("unknown optimizer '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format '{other}'"))),
        }
    }
}

/// One experiment: a function, an optimizer with its parameters, and a trial count.
///
/// Serialized as a flat JSON object with these field names; every key is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub function: ObjectiveId,
    /// Problem dimension. Studies fall back to their own default when unset.
    pub dim: Option<usize>,
    pub formula: Formula,
    pub optimizer: OptimizerPreset,
    pub trials: usize,
    pub base_seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub trace: bool,
    /// Leading iterations recorded per trial when `trace` is set.
    pub trace_iterations: usize,
    /// Worker threads; 0 uses every available core.
    pub jobs: usize,
    pub max_iterations: usize,

    pub k: usize,
    pub m: usize,
    pub xi: f64,
    pub q: f64,
    pub selection: Option<SelectionMethod>,
    pub basis: Option<ProbabilityBasis>,
    pub metric: Option<DistanceMetric>,
    pub clamp_samples: bool,

    pub swarm_size: usize,
    pub c1: f64,
    pub c2: f64,
    pub inertia_high: f64,
    pub inertia_low: f64,

    pub population: usize,
    pub weight_factor: f64,
    pub crossover_factor: f64,

    /// Restricts studies to these functions (default: the whole F1..F8 suite).
    pub functions: Option<Vec<ObjectiveId>>,
    /// Grid for the evaporation study.
    pub xi_list: Option<Vec<f64>>,
}

pub const DEFAULT_DIM: usize = 20;

impl Default for ExperimentConfig {
    fn default() -> Self {
        let pso = PsoParams::default();
        let de = DeParams::default();
        Self {
            function: ObjectiveId::Sphere,
            dim: None,
            formula: Formula::Paper,
            optimizer: OptimizerPreset::AcoStar,
            trials: 20,
            base_seed: 0,
            out: None,
            format: OutputFormat::Csv,
            trace: false,
            trace_iterations: 1,
            jobs: 0,
            max_iterations: 1000,
            k: 10,
            m: 10,
            xi: 0.5,
            q: crate::selection::DEFAULT_Q,
            selection: None,
            basis: None,
            metric: None,
            clamp_samples: true,
            swarm_size: pso.swarm_size,
            c1: pso.c1,
            c2: pso.c2,
            inertia_high: pso.inertia_high,
            inertia_low: pso.inertia_low,
            population: de.population,
            weight_factor: de.weight_factor,
            crossover_factor: de.crossover_factor,
            functions: None,
            xi_list: None,
        }
    }
}

/// A fully resolved optimizer, ready to run one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimizerSetup {
    Aco {
        preset: OptimizerPreset,
        params: AcoParams,
    },
    Pso(PsoParams),
    De(DeParams),
}

impl OptimizerSetup {
    pub fn label(&self) -> &'static str {
        match self {
            OptimizerSetup::Aco { preset, .. } => preset.name(),
            OptimizerSetup::Pso(_) => "pso",
            OptimizerSetup::De(_) => "de",
        }
    }

    pub fn aco_params(&self) -> Option<&AcoParams> {
        match self {
            OptimizerSetup::Aco { params, .. } => Some(params),
            _ => None,
        }
    }

    /// Runs one trial with `seed`.
    pub fn run(&self, objective: &ObjectiveSpec, seed: u64) -> Result<TrialResult> {
        let mut rng = RandomSource::new(seed);
        match *self {
            OptimizerSetup::Aco { params, .. } => {
                aco_run(&AcoParams { seed, ..params }, objective, &mut rng)
            }
            OptimizerSetup::Pso(p) => pso_run(&PsoParams { seed, ..p }, objective, &mut rng),
            OptimizerSetup::De(p) => de_run(&DeParams { seed, ..p }, objective, &mut rng),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn dimension(&self) -> usize {
        self.dim.unwrap_or(DEFAULT_DIM)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.dim == Some(0) {
            return Err(Error::Config("dim must be >= 1".into()));
        }
        Ok(())
    }

    pub fn objective(&self) -> Result<ObjectiveSpec> {
        self.objective_for(self.function, self.dimension())
    }

    pub fn objective_for(&self, id: ObjectiveId, dim: usize) -> Result<ObjectiveSpec> {
        Ok(registry(id, dim)?.with_formula(self.formula))
    }

    /// Resolves the optimizer for problem dimension `n`.
    ///
    /// Setting `selection`, `basis` or `metric` on an `aco` / `aco-star` preset
    /// turns it into `aco-custom`, with the preset supplying unset fields.
    pub fn optimizer_setup(&self, n: usize) -> Result<OptimizerSetup> {
        let setup = match self.optimizer {
            OptimizerPreset::Aco | OptimizerPreset::AcoStar | OptimizerPreset::AcoCustom => {
                let mut params = match self.optimizer {
                    OptimizerPreset::Aco => AcoParams::classical(n),
                    _ => AcoParams::improved(n),
                };
                let overridden =
                    self.selection.is_some() || self.basis.is_some() || self.metric.is_some();
                let preset = if overridden {
                    OptimizerPreset::AcoCustom
                } else {
                    self.optimizer
                };
                params.k = self.k;
                params.m = self.m;
                params.xi = EvaporationRate::new(self.xi)?;
                params.max_iterations = self.max_iterations;
                params.clamp_samples = self.clamp_samples;
                params.selection = SelectionSpec::new(
                    self.selection.unwrap_or(params.selection.method),
                    self.basis.unwrap_or(params.selection.basis),
                    self.q,
                )?;
                params.metric = self.metric.unwrap_or(params.metric);
                params.trace_iterations = if self.trace {
                    self.trace_iterations.min(self.max_iterations)
                } else {
                    0
                };
                params.validate()?;
                OptimizerSetup::Aco { preset, params }
            }
            OptimizerPreset::Pso => {
                let p = PsoParams {
                    swarm_size: self.swarm_size,
                    c1: self.c1,
                    c2: self.c2,
                    inertia_high: self.inertia_high,
                    inertia_low: self.inertia_low,
                    max_iterations: self.max_iterations,
                    seed: self.base_seed,
                };
                p.validate()?;
                OptimizerSetup::Pso(p)
            }
            OptimizerPreset::De => {
                let p = DeParams {
                    population: self.population,
                    weight_factor: self.weight_factor,
                    crossover_factor: self.crossover_factor,
                    max_iterations: self.max_iterations,
                    seed: self.base_seed,
                };
                p.validate()?;
                OptimizerSetup::De(p)
            }
        };
        Ok(setup)
    }

    pub fn seed_for(&self, trial: usize) -> u64 {
        self.base_seed.wrapping_add(trial as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_json_round_trip() {
        let json = r#"{"function":"rastrigin","dim":5,"optimizer":"aco","trials":3,
                       "base_seed":9,"metric":"canberra","xi":0.7}"#;
        let c: ExperimentConfig = serde_json::from_str(json).unwrap();
        assert_eq!(c.function, ObjectiveId::Rastrigin);
        assert_eq!(c.dimension(), 5);
        assert_eq!(c.metric, Some(DistanceMetric::Canberra));
        let back: ExperimentConfig =
            serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"trails":3}"#).is_err());
    }

    #[test]
    fn presets_resolve() {
        let mut c = ExperimentConfig {
            optimizer: OptimizerPreset::Aco,
            ..Default::default()
        };
        match c.optimizer_setup(4).unwrap() {
            OptimizerSetup::Aco { preset, params } => {
                assert_eq!(preset, OptimizerPreset::Aco);
                assert_eq!(params.selection.method, SelectionMethod::Bhs);
                assert_eq!(params.metric, DistanceMetric::MANHATTAN);
            }
            other => panic!("{other:?}"),
        }
        c.metric = Some(DistanceMetric::Canberra);
        let s = c.optimizer_setup(4).unwrap();
        assert_eq!(s.label(), "aco-custom");
        assert_eq!(
            s.aco_params().unwrap().selection.method,
            SelectionMethod::Bhs
        );
        assert_eq!(s.aco_params().unwrap().metric, DistanceMetric::Canberra);
    }

    #[test]
    fn invalid_values_rejected() {
        let c = ExperimentConfig {
            xi: 0.0,
            ..Default::default()
        };
        assert!(c.optimizer_setup(3).is_err());
        let c = ExperimentConfig {
            trials: 0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            optimizer: OptimizerPreset::De,
            population: 3,
            ..Default::default()
        };
        assert!(c.optimizer_setup(3).is_err());
    }
}
