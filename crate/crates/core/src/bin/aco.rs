use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aco_core::harness::{
    export, run_experiment, selection_map_traces, study_compare, study_evaporation, study_metrics,
    study_selection, ExperimentConfig, OptimizerPreset, OutputFormat, StudyKind, StudyTable,
    DEFAULT_XI_GRID,
};
use aco_core::{DistanceMetric, Formula, ObjectiveId, ProbabilityBasis, SelectionMethod};

#[derive(Parser)]
#[command(name = "aco", version, about = "Continuous ACO experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Overrides,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment (one function, one optimizer, many trials).
    Run,
    /// Run one of the parameter studies over the benchmark suite.
    Study {
        #[arg(value_enum)]
        which: Study,
    },
    /// Trace one iteration of each selection strategy on Ackley and draw the ring map.
    Selmap,
}

#[derive(Clone, Copy, ValueEnum)]
enum Study {
    Selection,
    Metrics,
    Evaporation,
    Compare,
}

/// Flags override values loaded from `--config`.
#[derive(Args, Default)]
struct Overrides {
    /// Flat JSON experiment config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_parser = parse::<ObjectiveId>)]
    function: Option<ObjectiveId>,
    #[arg(long, global = true)]
    dim: Option<usize>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Base seed; trial t uses seed + t.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    xi: Option<f64>,
    #[arg(long, global = true, value_parser = parse::<SelectionMethod>)]
    selection: Option<SelectionMethod>,
    #[arg(long, global = true, value_parser = parse::<ProbabilityBasis>)]
    basis: Option<ProbabilityBasis>,
    #[arg(long, global = true, value_parser = parse::<DistanceMetric>)]
    metric: Option<DistanceMetric>,
    #[arg(long, global = true, value_parser = parse::<Formula>)]
    formula: Option<Formula>,
    #[arg(long, global = true, value_parser = parse::<OptimizerPreset>)]
    optimizer: Option<OptimizerPreset>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_parser = parse::<OutputFormat>)]
    format: Option<OutputFormat>,
    /// Record selection traces (first iteration of every ACO trial).
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true)]
    iterations: Option<usize>,
    /// Comma-separated subset of the suite for studies.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse::<ObjectiveId>)]
    functions: Option<Vec<ObjectiveId>>,
    /// Comma-separated grid for `study evaporation`.
    #[arg(long, global = true, value_delimiter = ',')]
    xi_list: Option<Vec<f64>>,
    /// Let sampled variables leave the search box.
    #[arg(long, global = true)]
    no_clamp: bool,
}

fn parse<T: std::str::FromStr<Err = aco_core::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: aco_core::Error| e.to_string())
}

impl Overrides {
    fn resolve(&self) -> aco_core::Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(path) => ExperimentConfig::from_json_file(path)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag.clone() { c.$field = v; })*
            };
        }
        set!(function => function, trials => trials, seed => base_seed, xi => xi,
             formula => formula, optimizer => optimizer, jobs => jobs,
             format => format, iterations => max_iterations);
        if self.dim.is_some() {
            c.dim = self.dim;
        }
        if self.selection.is_some() {
            c.selection = self.selection;
        }
        if self.basis.is_some() {
            c.basis = self.basis;
        }
        if self.metric.is_some() {
            c.metric = self.metric;
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        if self.functions.is_some() {
            c.functions = self.functions.clone();
        }
        if self.xi_list.is_some() {
            c.xi_list = self.xi_list.clone();
        }
        c.trace |= self.trace;
        if self.no_clamp {
            c.clamp_samples = false;
        }
        c.validate()?;
        Ok(c)
    }
}

fn print_table(table: &StudyTable) {
    if table.study == StudyKind::Compare {
        print!("{:<12}", "function");
        for row in &table.rows {
            print!(" {:>24} {:>24}", format!("{} mean", row.label), "var");
        }
        println!();
        for &f in &table.functions {
            print!("{:<12}", f.name());
            for row in &table.rows {
                let cell = row.cell(f).expect("every row covers every function");
                print!(" {:>24.6e} {:>24.6e}", cell.mean, cell.variance);
            }
            println!();
        }
        return;
    }
    println!("{:<20} {:>24}", "label", "grand mean");
    for row in &table.rows {
        println!("{:<20} {:>24.6e}", row.label, row.grand_mean);
    }
    if let Some(best) = table.best_row() {
        match best.xi {
            Some(xi) => println!("argmin xi = {xi}"),
            None => println!("best = {}", best.label),
        }
    }
}

fn run(cli: &Cli) -> aco_core::Result<()> {
    let config = cli.opts.resolve()?;
    match cli.command {
        Command::Run => {
            let agg = run_experiment(&config)?;
            println!(
                "{} {} d={} trials={} mean={:e} variance={:e}",
                agg.function,
                agg.optimizer,
                config.dimension(),
                agg.trials,
                agg.mean,
                agg.variance
            );
        }
        Command::Study { which } => {
            let table = match which {
                Study::Selection => study_selection(&config)?,
                Study::Metrics => study_metrics(&config)?,
                Study::Evaporation => {
                    let grid = config
                        .xi_list
                        .clone()
                        .unwrap_or_else(|| DEFAULT_XI_GRID.to_vec());
                    study_evaporation(&config, &grid)?
                }
                Study::Compare => study_compare(&config)?,
            };
            print_table(&table);
            if let Some(dir) = &config.out {
                for path in export::write_study(dir, config.format, &table)? {
                    eprintln!("wrote {}", path.display());
                }
            }
        }
        Command::Selmap => {
            let series = selection_map_traces(&config)?;
            for s in &series {
                let ranks: Vec<String> = s
                    .trace
                    .records
                    .iter()
                    .take(30)
                    .map(|r| r.selected_rank.to_string())
                    .collect();
                println!("{:<12} {} ...", s.label, ranks.join(" "));
            }
            let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("."));
            let refs: Vec<(&str, &aco_core::SelectionTrace)> = series
                .iter()
                .map(|s| (s.label.as_str(), &s.trace))
                .collect();
            for path in export::export_selection_map(&refs, config.k, &dir)? {
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
