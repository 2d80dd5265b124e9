use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::selection::SelectionTrace;

use super::config::OutputFormat;
use super::experiment::{AggregateResult, TrialRecord};
use super::studies::{StudyKind, StudyTable};

pub const TRIALS_HEADER: [&str; 12] = [
    "function",
    "optimizer",
    "selection",
    "basis",
    "metric",
    "xi",
    "dim",
    "trial",
    "seed",
    "final_best",
    "iterations",
    "elapsed_ms",
];
pub const AGGREGATE_HEADER: [&str; 5] = ["function", "optimizer", "mean", "variance", "trials"];
pub const TRACE_HEADER: [&str; 4] = ["iteration", "l", "i", "selected_rank"];

/// Stroke colors for successive series.
pub const PALETTE: [&str; 6] = ["indigo", "red", "green", "purple", "blue", "orange"];

/// A real with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Config(format!("csv: {other:?}")),
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

pub fn write_trials_csv(path: &Path, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(TRIALS_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.function.name().to_string(),
            r.optimizer.clone(),
            r.selection.clone(),
            r.basis.clone(),
            r.metric.clone(),
            r.xi.map(fmt_real).unwrap_or_default(),
            r.dim.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            fmt_real(r.final_best),
            r.iterations.to_string(),
            fmt_real(r.elapsed_ms),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_aggregate_csv<'a>(
    path: &Path,
    aggregates: impl IntoIterator<Item = &'a AggregateResult>,
) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(AGGREGATE_HEADER).map_err(csv_err)?;
    for a in aggregates {
        w.write_record([
            a.function.name().to_string(),
            a.optimizer.clone(),
            fmt_real(a.mean),
            fmt_real(a.variance),
            a.trials.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace_csv(path: &Path, trace: &SelectionTrace) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(TRACE_HEADER).map_err(csv_err)?;
    for r in &trace.records {
        w.write_record([
            r.iteration.to_string(),
            r.l.to_string(),
            r.i.to_string(),
            r.selected_rank.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: serde::Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Lowercase, filesystem-safe form of a label.
pub fn slug(label: &str) -> String {
    let mut s = String::with_capacity(label.len());
    for c in label.chars() {
        if c.is_ascii_alphanumeric() || c == '.' {
            s.push(c.to_ascii_lowercase());
        } else if !s.ends_with('_') {
            s.push('_');
        }
    }
    s.trim_matches('_').to_string()
}

fn write_traces<'a>(
    dir: &Path,
    aggregates: impl IntoIterator<Item = &'a AggregateResult>,
) -> Result<()> {
    for a in aggregates {
        for (trial, trace) in a.traces() {
            let name = format!(
                "trace_{}_{}_trial{trial}.csv",
                a.function.name(),
                slug(&a.optimizer)
            );
            write_trace_csv(&dir.join(name), trace)?;
        }
    }
    Ok(())
}

/// Writes `trials.csv` and `aggregate.csv` (or `results.json`), plus one
/// trace CSV per traced trial.
pub fn write_experiment(
    dir: &Path,
    format: OutputFormat,
    aggregates: &[AggregateResult],
) -> Result<()> {
    create_dir(dir)?;
    match format {
        OutputFormat::Csv => {
            let records: Vec<TrialRecord> = aggregates
                .iter()
                .flat_map(|a| a.records.iter().cloned())
                .collect();
            write_trials_csv(&dir.join("trials.csv"), &records)?;
            write_aggregate_csv(&dir.join("aggregate.csv"), aggregates)?;
        }
        OutputFormat::Json => write_json(&dir.join("results.json"), aggregates)?,
    }
    write_traces(dir, aggregates)
}

/// Writes the trials that completed plus a `FAILED` marker holding `message`.
pub fn write_failure(dir: &Path, completed: &[TrialRecord], message: &str) -> Result<()> {
    create_dir(dir)?;
    write_trials_csv(&dir.join("trials.csv"), completed)?;
    fs::write(dir.join("FAILED"), format!("{message}\n"))?;
    Ok(())
}

/// Writes a study's tables, and the sweep plot for the evaporation study.
pub fn write_study(dir: &Path, format: OutputFormat, table: &StudyTable) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let mut written = Vec::new();
    match format {
        OutputFormat::Csv => {
            let records: Vec<TrialRecord> = table
                .aggregates()
                .flat_map(|a| a.records.iter().cloned())
                .collect();
            let trials = dir.join("trials.csv");
            write_trials_csv(&trials, &records)?;
            let aggregate = dir.join("aggregate.csv");
            write_aggregate_csv(&aggregate, table.aggregates())?;
            let summary = dir.join("summary.csv");
            let mut w = csv::Writer::from_path(&summary).map_err(csv_err)?;
            w.write_record(["label", "xi", "grand_mean"])
                .map_err(csv_err)?;
            for row in &table.rows {
                w.write_record([
                    row.label.clone(),
                    row.xi.map(fmt_real).unwrap_or_default(),
                    fmt_real(row.grand_mean),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
            written.extend([trials, aggregate, summary]);
        }
        OutputFormat::Json => {
            let path = dir.join("study.json");
            write_json(&path, table)?;
            written.push(path);
        }
    }
    if table.study == StudyKind::Evaporation {
        let points: Vec<(f64, f64)> = table
            .rows
            .iter()
            .filter_map(|r| r.xi.map(|xi| (xi, r.grand_mean)))
            .collect();
        let path = dir.join("evaporation.svg");
        fs::write(&path, sweep_svg(&points))?;
        written.push(path);
    }
    Ok(written)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const MAP_RING_STEP: f64 = 20.0;
const MAP_MARGIN: f64 = 30.0;
const LEGEND_WIDTH: f64 = 170.0;

/// Radius of the ring for a 1-based rank; rank 1 sits at the center.
pub fn ring_radius(rank: usize) -> f64 {
    rank.saturating_sub(1) as f64 * MAP_RING_STEP
}

/// Point `s` of `count` on the ring of `rank`, relative to the center.
pub fn map_point(rank: usize, s: usize, count: usize) -> (f64, f64) {
    let theta = std::f64::consts::TAU * s as f64 / count.max(1) as f64;
    let r = ring_radius(rank);
    (r * theta.cos(), -r * theta.sin())
}

/// Concentric-ring selection map: one ring per rank (rank 1 at the center),
/// selection `s` at angle `2πs/N` on the ring of its rank, one polyline per
/// series.
pub fn selection_map_svg(series: &[(&str, &SelectionTrace)], k: usize) -> String {
    let outer = ring_radius(k.max(1));
    let c = outer + MAP_MARGIN;
    let height = 2.0 * c;
    let width = height + LEGEND_WIDTH;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(svg, r#"<g id="rings" fill="none" stroke="lightgray">"#);
    for rank in 2..=k {
        let _ = writeln!(
            svg,
            r#"<circle cx="{c}" cy="{c}" r="{}"/>"#,
            ring_radius(rank)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r#"<circle cx="{c}" cy="{c}" r="2" fill="black"/>"#);
    for (idx, (label, trace)) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let n = trace.len();
        let mut pts = String::new();
        for (s, rec) in trace.records.iter().enumerate() {
            let (x, y) = map_point(rec.selected_rank, s, n);
            let _ = write!(pts, "{:.3},{:.3} ", c + x, c + y);
        }
        let _ = writeln!(
            svg,
            r#"<polyline class="series" data-label="{}" fill="none" stroke="{color}" stroke-width="1" stroke-opacity="0.8" points="{}"/>"#,
            escape(label),
            pts.trim_end()
        );
        let ly = MAP_MARGIN + 18.0 * idx as f64;
        let lx = height + 10.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="3"/><text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Line plot of grand mean against ξ, log-scaled when every mean is positive.
pub fn sweep_svg(points: &[(f64, f64)]) -> String {
    let (w, h, pad) = (480.0, 320.0, 50.0);
    let log = !points.is_empty() && points.iter().all(|p| p.1 > 0.0);
    let ty = |v: f64| if log { v.log10() } else { v };
    let finite: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| (x, ty(y)))
        .filter(|p| p.0.is_finite() && p.1.is_finite())
        .collect();
    let range = |vals: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
        if lo.is_finite() && hi > lo {
            (lo, hi)
        } else if lo.is_finite() {
            (lo - 0.5, lo + 0.5)
        } else {
            (0.0, 1.0)
        }
    };
    let (x0, x1) = range(&mut finite.iter().map(|p| p.0));
    let (y0, y1) = range(&mut finite.iter().map(|p| p.1));
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<g stroke="black"><line x1="{pad}" y1="{}" x2="{}" y2="{}"/><line x1="{pad}" y1="{pad}" x2="{pad}" y2="{}"/></g>"#,
        h - pad,
        w - pad,
        h - pad,
        h - pad
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">xi</text>"#,
        w / 2.0,
        h - 12.0
    );
    let ylabel = if log {
        "log10 grand mean"
    } else {
        "grand mean"
    };
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" font-family="sans-serif" font-size="12" transform="rotate(-90 14 {})" text-anchor="middle">{ylabel}</text>"#,
        h / 2.0,
        h / 2.0
    );
    let pts: Vec<String> = finite
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline class="series" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
        PALETTE[0],
        pts.join(" ")
    );
    for &(x, y) in &finite {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="{}"/>"#,
            sx(x),
            sy(y),
            PALETTE[0]
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes one trace CSV per series and a combined `selection_map.svg`.
pub fn export_selection_map(
    series: &[(&str, &SelectionTrace)],
    k: usize,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    if series.is_empty() || series.iter().any(|(_, t)| t.is_empty()) {
        return Err(Error::Argument(
            "selection map needs nonempty traces".into(),
        ));
    }
    create_dir(dir)?;
    let mut written = Vec::with_capacity(series.len() + 1);
    for (label, trace) in series {
        let path = dir.join(format!("selmap_{}.csv", slug(label)));
        write_trace_csv(&path, trace)?;
        written.push(path);
    }
    let svg = dir.join("selection_map.svg");
    fs::write(&svg, selection_map_svg(series, k))?;
    written.push(svg);
    Ok(written)
}
