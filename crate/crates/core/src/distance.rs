//! Per-dimension average distance between the selected archive member and the
//! rest of the archive, and the resulting sampling spread `sigma = xi * D`.
//!
//! For column values `x_r` (variable `i` of every member) and pivot `y` (variable
//! `i` of the selected member), each metric aggregates over all `k` members and
//! divides by `k - 1`. The pivot's own term is zero in every sum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::archive::Archive;
use crate::error::{Error, Result};

/// Bray-Curtis denominators below this magnitude are treated as degenerate.
pub const BRAY_CURTIS_EPS: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceMetric {
    /// Order `r > 0`. `r = 1` is Manhattan, `r = 2` Euclidean.
    Minkowski(f64),
    SquaredEuclidean,
    Chebychev,
    BrayCurtis,
    Canberra,
}

impl DistanceMetric {
    pub const MANHATTAN: DistanceMetric = DistanceMetric::Minkowski(1.0);
    pub const EUCLIDEAN: DistanceMetric = DistanceMetric::Minkowski(2.0);

    /// The ten metrics D1..D10 in table order.
    pub const ALL: [DistanceMetric; 10] = [
        DistanceMetric::Minkowski(0.5),
        DistanceMetric::Minkowski(1.0),
        DistanceMetric::Minkowski(2.0),
        DistanceMetric::Minkowski(3.0),
        DistanceMetric::Minkowski(4.0),
        DistanceMetric::Minkowski(5.0),
        DistanceMetric::SquaredEuclidean,
        DistanceMetric::Chebychev,
        DistanceMetric::BrayCurtis,
        DistanceMetric::Canberra,
    ];

    pub fn validate(&self) -> Result<()> {
        if let DistanceMetric::Minkowski(r) = self {
            if !(r.is_finite() && *r > 0.0) {
                return Err(Error::Config(format!("Minkowski order r={r} must be > 0")));
            }
        }
        Ok(())
    }

    /// CLI name, e.g. `manhattan` or `minkowski-0.5`.
    pub fn name(&self) -> String {
        match self {
            DistanceMetric::Minkowski(r) if *r == 1.0 => "manhattan".into(),
            DistanceMetric::Minkowski(r) if *r == 2.0 => "euclidean".into(),
            DistanceMetric::Minkowski(r) => format!("minkowski-{r}"),
            DistanceMetric::SquaredEuclidean => "squared-euclidean".into(),
            DistanceMetric::Chebychev => "chebychev".into(),
            DistanceMetric::BrayCurtis => "bray-curtis".into(),
            DistanceMetric::Canberra => "canberra".into(),
        }
    }
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for DistanceMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let metric = match lower.as_str() {
            "manhattan" => DistanceMetric::MANHATTAN,
            "euclidean" => DistanceMetric::EUCLIDEAN,
            "squared-euclidean" => DistanceMetric::SquaredEuclidean,
            "chebychev" | "chebyshev" => DistanceMetric::Chebychev,
            "bray-curtis" => DistanceMetric::BrayCurtis,
            "canberra" => DistanceMetric::Canberra,
            other => {
                let r = other
                    .strip_prefix("minkowski-")
                    .and_then(|r| r.parse::<f64>().ok())
                    .ok_or_else(|| Error::Config(format!("unknown distance metric '{s}'")))?;
                DistanceMetric::Minkowski(r)
            }
        };
        metric.validate()?;
        Ok(metric)
    }
}

impl Serialize for DistanceMetric {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for DistanceMetric {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Pheromone evaporation rate `xi > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EvaporationRate(f64);

impl EvaporationRate {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::Config(format!(
                "evaporation rate xi={xi} must be > 0"
            )));
        }
        Ok(Self(xi))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for EvaporationRate {
    type Error = Error;

    fn try_from(xi: f64) -> Result<Self> {
        Self::new(xi)
    }
}

impl From<EvaporationRate> for f64 {
    fn from(xi: EvaporationRate) -> f64 {
        xi.0
    }
}

/// A per-dimension distance. `degenerate` marks a Bray-Curtis evaluation whose
/// denominator vanished and was mapped to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerDimDistance {
    pub value: f64,
    pub degenerate: bool,
}

/// Average distance for variable `dim` between member `selected` and the archive.
pub fn per_dim_distance(
    archive: &Archive,
    selected: usize,
    dim: usize,
    metric: DistanceMetric,
) -> Result<PerDimDistance> {
    if archive.len() < 2 {
        return Err(Error::Argument("distance needs k >= 2".into()));
    }
    if selected >= archive.len() {
        return Err(Error::Argument(format!(
            "selected index {selected} out of range for k={}",
            archive.len()
        )));
    }
    if dim >= archive.dimension() {
        return Err(Error::Argument(format!(
            "dimension index {dim} out of range for n={}",
            archive.dimension()
        )));
    }
    let pivot = archive.get(selected).variables()[dim];
    column_distance(archive.column(dim), pivot, archive.len(), metric)
}

/// Same as [`per_dim_distance`] on a raw column of `k` values.
pub fn column_distance(
    column: impl IntoIterator<Item = f64>,
    pivot: f64,
    k: usize,
    metric: DistanceMetric,
) -> Result<PerDimDistance> {
    metric.validate()?;
    if k < 2 {
        return Err(Error::Argument("distance needs k >= 2".into()));
    }
    let norm = (k - 1) as f64;
    let column = column.into_iter();
    let mut degenerate = false;
    let raw = match metric {
        DistanceMetric::Minkowski(1.0) => column.map(|x| (x - pivot).abs()).sum(),
        DistanceMetric::Minkowski(2.0) => {
            column.map(|x| (x - pivot).powi(2)).sum::<f64>().sqrt()
        }
        DistanceMetric::Minkowski(r) => column
            .map(|x| (x - pivot).abs().powf(r))
            .sum::<f64>()
            .powf(1.0 / r),
        DistanceMetric::SquaredEuclidean => column.map(|x| (x - pivot).powi(2)).sum(),
        DistanceMetric::Chebychev => column.map(|x| (x - pivot).abs()).fold(0.0, f64::max),
        DistanceMetric::BrayCurtis => {
            let (num, den) = column.fold((0.0, 0.0), |(num, den), x| {
                (num + (x - pivot).abs(), den + (x + pivot))
            });
            if den.abs() < BRAY_CURTIS_EPS {
                degenerate = true;
                0.0
            } else {
                num / den.abs()
            }
        }
        DistanceMetric::Canberra => column
            .map(|x| {
                let den = x.abs() + pivot.abs();
                if den == 0.0 {
                    0.0
                } else {
                    (x - pivot).abs() / den
                }
            })
            .sum(),
    };
    Ok(PerDimDistance {
        value: raw / norm,
        degenerate,
    })
}

/// Gaussian sampling spread for distance `d`.
pub fn sigma(d: f64, xi: EvaporationRate) -> f64 {
    xi.value() * d
}
