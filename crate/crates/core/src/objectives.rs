//! Benchmark objective functions and the RMSE utility.
//!
//! All built-ins are minimization problems with a global optimum value of 0.
//! Zakharov and Dixon-Price come in two variants, selected by [`Formula`]:
//! `Paper` reproduces the expressions exactly as published for the study this
//! harness replicates, `Standard` is the form used by the wider benchmarking
//! community.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ACKLEY_A: f64 = 20.0;
const ACKLEY_B: f64 = 0.2;
const ACKLEY_C: f64 = 2.0 * PI;

/// A box `[min, max]` shared by every coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: f64,
    pub max: f64,
}

impl Bounds {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::Config(format!(
                "invalid bounds [{min}, {max}]: need finite min < max"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.min && x <= self.max
    }
}

/// Anything an optimizer can minimize.
pub trait Objective: Sync {
    fn dimension(&self) -> usize;
    fn bounds(&self) -> Bounds;
    fn evaluate(&self, x: &[f64]) -> Result<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveId {
    Ackley,
    Sphere,
    SumSquare,
    DixonPrice,
    Rosenbrock,
    Rastrigin,
    Griewank,
    Zakharov,
    /// Dataset-driven RMSE objective. Not a built-in; see [`RmseObjective`].
    #[serde(rename = "rmse")]
    ExternalRmse,
}

impl ObjectiveId {
    /// The benchmark suite F1..F8, in table order.
    pub const SUITE: [ObjectiveId; 8] = [
        ObjectiveId::Ackley,
        ObjectiveId::Sphere,
        ObjectiveId::SumSquare,
        ObjectiveId::DixonPrice,
        ObjectiveId::Rosenbrock,
        ObjectiveId::Rastrigin,
        ObjectiveId::Griewank,
        ObjectiveId::Zakharov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObjectiveId::Ackley => "ackley",
            ObjectiveId::Sphere => "sphere",
            ObjectiveId::SumSquare => "sumsquare",
            ObjectiveId::DixonPrice => "dixonprice",
            ObjectiveId::Rosenbrock => "rosenbrock",
            ObjectiveId::Rastrigin => "rastrigin",
            ObjectiveId::Griewank => "griewank",
            ObjectiveId::Zakharov => "zakharov",
            ObjectiveId::ExternalRmse => "rmse",
        }
    }

    /// Search box for the built-ins.
    pub fn bounds(self) -> Result<Bounds> {
        let (lo, hi) = match self {
            ObjectiveId::Ackley => (-15.0, 30.0),
            ObjectiveId::Sphere => (-50.0, 100.0),
            ObjectiveId::SumSquare => (-10.0, 10.0),
            ObjectiveId::DixonPrice => (-10.0, 10.0),
            ObjectiveId::Rosenbrock => (-5.0, 10.0),
            ObjectiveId::Rastrigin => (-5.12, 5.12),
            ObjectiveId::Griewank => (-600.0, 600.0),
            ObjectiveId::Zakharov => (-10.0, 10.0),
            ObjectiveId::ExternalRmse => {
                return Err(Error::Config(
                    "rmse is not a built-in objective; wrap a model in RmseObjective".into(),
                ))
            }
        };
        Bounds::new(lo, hi)
    }
}

impl fmt::Display for ObjectiveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObjectiveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = match s.to_ascii_lowercase().as_str() {
            "ackley" => ObjectiveId::Ackley,
            "sphere" => ObjectiveId::Sphere,
            "sumsquare" => ObjectiveId::SumSquare,
            "dixonprice" => ObjectiveId::DixonPrice,
            "rosenbrock" => ObjectiveId::Rosenbrock,
            "rastrigin" => ObjectiveId::Rastrigin,
            "griewank" => ObjectiveId::Griewank,
            "zakharov" => ObjectiveId::Zakharov,
            "rmse" => ObjectiveId::ExternalRmse,
            other => return Err(Error::Config(format!("unknown function '{other}'"))),
        };
        Ok(id)
    }
}

/// Which variant of the Zakharov and Dixon-Price expressions to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    #[default]
    Paper,
    Standard,
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Formula::Paper),
            "standard" => Ok(Formula::Standard),
            other => Err(Error::Config(format!("unknown formula variant '{other}'"))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::Paper => "paper",
            Formula::Standard => "standard",
        })
    }
}

/// A built-in benchmark at a fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub id: ObjectiveId,
    pub dimension: usize,
    pub bounds: Bounds,
    pub optimum_value: f64,
    pub formula: Formula,
}

/// Looks up a built-in with its standard search box and optimum value.
pub fn registry(id: ObjectiveId, dimension: usize) -> Result<ObjectiveSpec> {
    if dimension == 0 {
        return Err(Error::Config("dimension must be at least 1".into()));
    }
    Ok(ObjectiveSpec {
        id,
        dimension,
        bounds: id.bounds()?,
        optimum_value: 0.0,
        formula: Formula::Paper,
    })
}

impl ObjectiveSpec {
    pub fn with_formula(mut self, formula: Formula) -> Self {
        self.formula = formula;
        self
    }

    /// A point attaining the optimum value.
    pub fn optimizer_point(&self) -> Vec<f64> {
        match self.id {
            ObjectiveId::Rosenbrock => vec![1.0; self.dimension],
            ObjectiveId::DixonPrice => match self.formula {
                Formula::Paper => {
                    let mut x = vec![0.0; self.dimension];
                    x[0] = 1.0;
                    x
                }
                // x_i = 2^{-(2^i - 2)/2^i}, i = 1..d
                Formula::Standard => (1..=self.dimension)
                    .map(|i| {
                        let p = 2f64.powi(i as i32);
                        2f64.powf(-(p - 2.0) / p)
                    })
                    .collect(),
            },
            _ => vec![0.0; self.dimension],
        }
    }
}

impl Objective for ObjectiveSpec {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::Argument(format!(
                "{} expects {} variables, got {}",
                self.id,
                self.dimension,
                x.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument(format!("non-finite input to {}", self.id)));
        }
        let value = match self.id {
            ObjectiveId::Ackley => ackley(x),
            ObjectiveId::Sphere => sphere(x),
            ObjectiveId::SumSquare => sum_square(x),
            ObjectiveId::DixonPrice => match self.formula {
                Formula::Paper => dixon_price_paper(x),
                Formula::Standard => dixon_price_standard(x),
            },
            ObjectiveId::Rosenbrock => rosenbrock(x),
            ObjectiveId::Rastrigin => rastrigin(x),
            ObjectiveId::Griewank => griewank(x),
            ObjectiveId::Zakharov => match self.formula {
                Formula::Paper => zakharov_paper(x),
                Formula::Standard => zakharov_standard(x),
            },
            ObjectiveId::ExternalRmse => {
                return Err(Error::Config(
                    "rmse objective has no built-in evaluator".into(),
                ))
            }
        };
        if !value.is_finite() {
            return Err(Error::Evaluation {
                message: format!("{} overflowed to {value}", self.id),
                input: x.to_vec(),
            });
        }
        Ok(value)
    }
}

fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
    let cos = x.iter().map(|v| (ACKLEY_C * v).cos()).sum::<f64>() / d;
    -ACKLEY_A * (-ACKLEY_B * sq.sqrt()).exp() - cos.exp() + ACKLEY_A + E
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn sum_square(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum()
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

fn zakharov_linear(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum()
}

fn zakharov_paper(x: &[f64]) -> f64 {
    let s = zakharov_linear(x);
    sphere(x) + 2.0 * s * s
}

fn zakharov_standard(x: &[f64]) -> f64 {
    let s = zakharov_linear(x);
    sphere(x) + s * s + s.powi(4)
}

fn dixon_price_paper(x: &[f64]) -> f64 {
    let tail: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * (2.0 * v * v - v - 1.0).powi(2))
        .sum();
    (x[0] - 1.0).powi(2) * tail
}

fn dixon_price_standard(x: &[f64]) -> f64 {
    let tail: f64 = x
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i + 2) as f64 * (2.0 * w[1] * w[1] - w[0]).powi(2))
        .sum();
    (x[0] - 1.0).powi(2) + tail
}

/// Residuals `predicted - target` of a model on a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorVector(Vec<f64>);

impl ErrorVector {
    pub fn new(errors: Vec<f64>) -> Result<Self> {
        if errors.iter().any(|e| !e.is_finite()) {
            return Err(Error::Argument(
                "error vector contains non-finite entries".into(),
            ));
        }
        Ok(Self(errors))
    }

    pub fn from_predictions(predicted: &[f64], target: &[f64]) -> Result<Self> {
        if predicted.len() != target.len() {
            return Err(Error::Argument(format!(
                "{} predictions for {} targets",
                predicted.len(),
                target.len()
            )));
        }
        Self::new(predicted.iter().zip(target).map(|(p, t)| p - t).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Root mean square of the residuals.
pub fn rmse(errors: &ErrorVector) -> Result<f64> {
    let e = errors.as_slice();
    if e.is_empty() {
        return Err(Error::Argument("rmse of an empty error vector".into()));
    }
    Ok((e.iter().map(|v| v * v).sum::<f64>() / e.len() as f64).sqrt())
}

/// An objective defined as the RMSE of a caller-supplied model over its own data.
///
/// `residuals` maps a parameter vector to the model's error vector.
pub struct RmseObjective<F> {
    dimension: usize,
    bounds: Bounds,
    residuals: F,
}

impl<F> RmseObjective<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Sync,
{
    pub fn new(dimension: usize, bounds: Bounds, residuals: F) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Config("dimension must be at least 1".into()));
        }
        Ok(Self {
            dimension,
            bounds,
            residuals,
        })
    }
}

impl<F> Objective for RmseObjective<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Sync,
{
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::Argument(format!(
                "rmse objective expects {} variables, got {}",
                self.dimension,
                x.len()
            )));
        }
        let errors = ErrorVector::new((self.residuals)(x)).map_err(|e| Error::Evaluation {
            message: e.to_string(),
            input: x.to_vec(),
        })?;
        rmse(&errors)
    }
}
