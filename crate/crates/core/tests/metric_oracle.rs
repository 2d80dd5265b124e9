//! Every metric against a deliberately naive re-implementation.

mod common;

use aco_core::{per_dim_distance, Archive, DistanceMetric, RandomSource, Solution};
use common::{close, naive_distance as naive};

#[test]
fn all_metrics_match_naive_loops() {
    let mut rng = RandomSource::new(2024);
    let mut compared = 0;
    for _ in 0..500 {
        let k = 2 + rng.index(5);
        let n = 1 + rng.index(4);
        let solutions: Vec<Solution> = (0..k)
            .map(|_| {
                let vars: Vec<f64> = (0..n).map(|_| rng.uniform_in(-10.0, 10.0)).collect();
                Solution::from_parts(vars, rng.uniform_in(0.0, 100.0)).unwrap()
            })
            .collect();
        let archive = Archive::from_solutions(solutions).unwrap();
        for metric in DistanceMetric::ALL {
            for j in 0..k {
                for i in 0..n {
                    let column: Vec<f64> = archive.column(i).collect();
                    let want = naive(&column, j, metric);
                    let got = per_dim_distance(&archive, j, i, metric).unwrap().value;
                    assert!(
                        close(got, want),
                        "{metric} k={k} j={j} i={i}: {got} vs {want}"
                    );
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 5000);
}

#[test]
fn repeated_values_and_zeros() {
    // ties and exact zeros exercise the Canberra zero-term and the flat cases
    let cols = [
        vec![0.0, 0.0, 1.0],
        vec![2.0, 2.0, 2.0],
        vec![-1.0, 1.0, 0.0, 0.0],
    ];
    for col in &cols {
        let solutions: Vec<Solution> = col
            .iter()
            .enumerate()
            .map(|(f, &v)| Solution::from_parts(vec![v], f as f64).unwrap())
            .collect();
        let archive = Archive::from_solutions(solutions).unwrap();
        for metric in DistanceMetric::ALL {
            for j in 0..col.len() {
                let want = naive(col, j, metric);
                let got = per_dim_distance(&archive, j, 0, metric).unwrap().value;
                assert!(close(got, want), "{metric} {col:?} j={j}: {got} vs {want}");
            }
        }
    }
}
