use std::fs;
use std::path::Path;

use aco_core::harness::{
    export, mean_variance, run_experiment, selection_map_traces, study_evaporation, study_metrics,
    AggregateResult, ExperimentConfig, OptimizerPreset, OutputFormat, TrialRecord,
};
use aco_core::selection::SelectionRecord;
use aco_core::{ObjectiveId, SelectionTrace};

fn record(trial: usize, final_best: f64) -> TrialRecord {
    TrialRecord {
        function: ObjectiveId::Sphere,
        optimizer: "pso".into(),
        selection: String::new(),
        basis: String::new(),
        metric: String::new(),
        xi: None,
        dim: 2,
        trial,
        seed: trial as u64,
        final_best,
        iterations: 1,
        elapsed_ms: 0.0,
        trace: None,
    }
}

fn small(optimizer: OptimizerPreset) -> ExperimentConfig {
    ExperimentConfig {
        function: ObjectiveId::Rastrigin,
        dim: Some(4),
        optimizer,
        trials: 6,
        base_seed: 11,
        max_iterations: 60,
        jobs: 2,
        ..Default::default()
    }
}

fn data_rows(path: &Path) -> usize {
    fs::read_to_string(path).unwrap().lines().count() - 1
}

#[test]
fn two_values_hand_computed() {
    let agg = AggregateResult::from_records(
        ObjectiveId::Sphere,
        "pso",
        vec![record(0, 1.0), record(1, 3.0)],
    )
    .unwrap();
    assert_eq!((agg.mean, agg.variance, agg.trials), (2.0, 1.0, 2));
}

#[test]
fn single_trial_has_zero_variance() {
    let c = ExperimentConfig {
        trials: 1,
        ..small(OptimizerPreset::De)
    };
    let agg = run_experiment(&c).unwrap();
    assert_eq!(agg.mean, agg.records[0].final_best);
    assert_eq!(agg.variance, 0.0);
}

#[test]
fn aggregate_matches_naive_recomputation() {
    for preset in [
        OptimizerPreset::Aco,
        OptimizerPreset::AcoStar,
        OptimizerPreset::Pso,
        OptimizerPreset::De,
    ] {
        let agg = run_experiment(&small(preset)).unwrap();
        let v: Vec<f64> = agg.records.iter().map(|r| r.final_best).collect();
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        assert!((agg.mean - mean).abs() <= 1e-12 * mean.abs().max(1.0));
        assert!((agg.variance - var).abs() <= 1e-12 * var.abs().max(1.0));
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(lo <= agg.mean && agg.mean <= hi);
        assert!(agg.variance >= 0.0);
        let seeds: Vec<u64> = agg.records.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, (11..17).collect::<Vec<_>>());
    }
    assert_eq!(mean_variance(&[5.0, 5.0, 5.0]), Some((5.0, 0.0)));
}

#[test]
fn deterministic_and_schedule_independent() {
    let finals = |jobs: usize| {
        let agg = run_experiment(&ExperimentConfig {
            jobs,
            ..small(OptimizerPreset::AcoStar)
        })
        .unwrap();
        (
            agg.mean,
            agg.variance,
            agg.records.iter().map(|r| r.final_best).collect::<Vec<_>>(),
        )
    };
    let serial = finals(1);
    assert_eq!(serial, finals(1));
    assert_eq!(serial, finals(8));
}

#[test]
fn csv_outputs_have_schema_and_row_counts() {
    let dir = tempfile::tempdir().unwrap();
    let c = ExperimentConfig {
        out: Some(dir.path().to_path_buf()),
        trace: true,
        ..small(OptimizerPreset::Aco)
    };
    run_experiment(&c).unwrap();
    let trials = fs::read_to_string(dir.path().join("trials.csv")).unwrap();
    assert_eq!(
        trials.lines().next().unwrap(),
        "function,optimizer,selection,basis,metric,xi,dim,trial,seed,final_best,iterations,elapsed_ms"
    );
    assert_eq!(trials.lines().count(), 7);
    let agg = fs::read_to_string(dir.path().join("aggregate.csv")).unwrap();
    assert_eq!(
        agg.lines().next().unwrap(),
        "function,optimizer,mean,variance,trials"
    );
    let row: Vec<&str> = agg.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "rastrigin");
    assert_eq!(row[1], "aco");
    assert_eq!(row[4], "6");
    // 17 significant digits: d.dddddddddddddddde±x
    let mantissa = row[2].split('e').next().unwrap();
    assert_eq!(mantissa.replace('.', "").trim_start_matches('-').len(), 17);

    let trace = dir.path().join("trace_rastrigin_aco_trial0.csv");
    assert_eq!(
        fs::read_to_string(&trace).unwrap().lines().next().unwrap(),
        "iteration,l,i,selected_rank"
    );
    assert_eq!(data_rows(&trace), 10 * 4);
}

#[test]
fn rerun_reproduces_numeric_fields() {
    let numeric = |dir: &Path| {
        run_experiment(&ExperimentConfig {
            out: Some(dir.to_path_buf()),
            ..small(OptimizerPreset::Pso)
        })
        .unwrap();
        let trials: Vec<String> = fs::read_to_string(dir.join("trials.csv"))
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect();
        (fs::read(dir.join("aggregate.csv")).unwrap(), trials)
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(numeric(a.path()), numeric(b.path()));
}

#[test]
fn study_row_counts_are_trials_times_functions() {
    let dir = tempfile::tempdir().unwrap();
    let c = ExperimentConfig {
        trials: 3,
        max_iterations: 10,
        functions: Some(vec![ObjectiveId::Sphere, ObjectiveId::Griewank]),
        ..Default::default()
    };
    let table = study_metrics(&c).unwrap();
    export::write_study(dir.path(), OutputFormat::Csv, &table).unwrap();
    assert_eq!(data_rows(&dir.path().join("trials.csv")), 10 * 2 * 3);
    assert_eq!(data_rows(&dir.path().join("aggregate.csv")), 10 * 2);
    assert_eq!(data_rows(&dir.path().join("summary.csv")), 10);
}

#[test]
fn evaporation_sweep_writes_one_row_per_xi_and_a_plot() {
    let dir = tempfile::tempdir().unwrap();
    let c = ExperimentConfig {
        trials: 2,
        max_iterations: 10,
        functions: Some(vec![ObjectiveId::Sphere]),
        ..Default::default()
    };
    let grid = [0.1, 0.4, 0.9];
    let table = study_evaporation(&c, &grid).unwrap();
    assert_eq!(table.rows.len(), 3);
    assert!(grid.contains(&table.argmin_xi().unwrap()));
    export::write_study(dir.path(), OutputFormat::Csv, &table).unwrap();
    let svg = fs::read_to_string(dir.path().join("evaporation.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let circles = doc
        .descendants()
        .filter(|n| n.has_tag_name("circle"))
        .count();
    assert_eq!(circles, 3);
}

#[test]
fn json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    run_experiment(&ExperimentConfig {
        out: Some(dir.path().to_path_buf()),
        format: OutputFormat::Json,
        ..small(OptimizerPreset::De)
    })
    .unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("results.json")).unwrap())
            .unwrap();
    assert_eq!(v[0]["optimizer"], "de");
    assert_eq!(v[0]["records"].as_array().unwrap().len(), 6);
}

#[test]
fn failing_trial_flushes_partial_results_with_marker() {
    let dir = tempfile::tempdir().unwrap();
    // unclamped squared-euclidean overflows sigma on Ackley for some seeds
    let c = ExperimentConfig {
        function: ObjectiveId::Ackley,
        dim: Some(2),
        optimizer: OptimizerPreset::AcoStar,
        clamp_samples: false,
        trials: 20,
        out: Some(dir.path().to_path_buf()),
        ..Default::default()
    };
    let err = run_experiment(&c).unwrap_err();
    let marker = fs::read_to_string(dir.path().join("FAILED")).unwrap();
    assert!(marker.starts_with("trial "), "{marker}");
    let failed_trial: usize = marker[6..].split(' ').next().unwrap().parse().unwrap();
    assert_eq!(data_rows(&dir.path().join("trials.csv")), failed_trial);
    assert!(!dir.path().join("aggregate.csv").exists());
    assert!(!err.to_string().is_empty());
}

#[test]
fn selection_map_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let series = selection_map_traces(&ExperimentConfig::default()).unwrap();
    let refs: Vec<(&str, &SelectionTrace)> = series
        .iter()
        .map(|s| (s.label.as_str(), &s.trace))
        .collect();
    let files = export::export_selection_map(&refs, 10, dir.path()).unwrap();
    assert_eq!(files.len(), 7);
    for f in &files[..6] {
        assert_eq!(data_rows(f), 300);
    }
    let svg = fs::read_to_string(dir.path().join("selection_map.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let lines: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .collect();
    assert_eq!(lines.len(), 6);
    let mut strokes: Vec<&str> = lines
        .iter()
        .map(|n| n.attribute("stroke").unwrap())
        .collect();
    strokes.sort();
    strokes.dedup();
    assert_eq!(strokes.len(), 6);
    for line in &lines {
        assert_eq!(line.attribute("points").unwrap().split(' ').count(), 300);
    }
}

#[test]
fn all_rank_one_trace_sits_at_center() {
    let trace = SelectionTrace {
        records: (0..30)
            .map(|i| SelectionRecord {
                iteration: 0,
                l: 0,
                i,
                selected_rank: 1,
            })
            .collect(),
    };
    let svg = export::selection_map_svg(&[("rank one", &trace)], 10);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let ring = doc
        .descendants()
        .find(|n| n.has_tag_name("circle") && n.attribute("fill") == Some("black"))
        .unwrap();
    let center = (
        ring.attribute("cx").unwrap().parse::<f64>().unwrap(),
        ring.attribute("cy").unwrap().parse::<f64>().unwrap(),
    );
    let line = doc
        .descendants()
        .find(|n| n.has_tag_name("polyline"))
        .unwrap();
    for p in line.attribute("points").unwrap().split(' ') {
        let (x, y) = p.split_once(',').unwrap();
        assert_eq!(
            (x.parse::<f64>().unwrap(), y.parse::<f64>().unwrap()),
            center
        );
    }
}

#[test]
fn empty_trace_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let empty = SelectionTrace::default();
    assert!(export::export_selection_map(&[("x", &empty)], 10, dir.path()).is_err());
}
