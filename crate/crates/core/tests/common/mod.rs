//! Helpers shared by the integration test targets.

use aco_core::DistanceMetric;

/// Index-based loops straight from the per-dimension definitions.
#[allow(clippy::needless_range_loop)]
pub fn naive_distance(column: &[f64], j: usize, metric: DistanceMetric) -> f64 {
    let k = column.len();
    let y = column[j];
    let norm = (k - 1) as f64;
    match metric {
        DistanceMetric::Minkowski(r) => {
            let mut acc = 0.0;
            for idx in 0..k {
                acc += (column[idx] - y).abs().powf(r);
            }
            acc.powf(1.0 / r) / norm
        }
        DistanceMetric::SquaredEuclidean => {
            let mut acc = 0.0;
            for idx in 0..k {
                let d = column[idx] - y;
                acc += d * d;
            }
            acc / norm
        }
        DistanceMetric::Chebychev => {
            let mut best = 0.0_f64;
            for idx in 0..k {
                let d = (column[idx] - y).abs();
                if d > best {
                    best = d;
                }
            }
            best / norm
        }
        DistanceMetric::BrayCurtis => {
            let mut num = 0.0;
            let mut den = 0.0;
            for idx in 0..k {
                num += (column[idx] - y).abs();
                den += column[idx] + y;
            }
            if den.abs() < 1e-15 {
                0.0
            } else {
                num / den.abs() / norm
            }
        }
        DistanceMetric::Canberra => {
            let mut acc = 0.0;
            for idx in 0..k {
                let den = column[idx].abs() + y.abs();
                if den != 0.0 {
                    acc += (column[idx] - y).abs() / den;
                }
            }
            acc / norm
        }
    }
}

/// Relative error within 1e-12 (exact equality covers zeros).
pub fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}
