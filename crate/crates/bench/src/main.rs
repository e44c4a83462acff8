use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use drmax_bench::experiment::run_on_graph;
use drmax_bench::{write_report, write_report_to, ExperimentConfig, InputSpec, OutputSpec, ReportFormat};
use drmax_core::objectives::{RevenueObjective, DEFAULT_ADVOCACY_P};
use drmax_core::{Algorithm, BoxConstraint};

/// Maximize expected word-of-mouth revenue on a graph with double greedy
/// variants, and report objective values and oracle calls per trial.
#[derive(Debug, Parser)]
#[command(name = "drmax", version)]
struct Cli {
    /// Edge-list file, or `synthetic:gnp:<n>:<prob>[:<seed>]`, or
    /// `synthetic:path:<n>`.
    #[arg(long)]
    input: String,

    /// Algorithm to run: SG, DG, FastDG or PolyDG. Repeatable.
    #[arg(long = "algo", required = true, value_parser = parse_algorithm)]
    algorithms: Vec<Algorithm>,

    /// Accuracy parameter for FastDG and PolyDG. Repeatable.
    #[arg(long = "eps")]
    epsilons: Vec<f64>,

    /// Uniform budget bound on every vertex.
    #[arg(long)]
    bound: u64,

    /// Probability that one unit of budget converts a vertex.
    #[arg(long, default_value_t = DEFAULT_ADVOCACY_P)]
    p: f64,

    #[arg(long, default_value_t = 1)]
    trials: u32,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Report file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv or json; defaults to the extension of --out, else csv.
    #[arg(long)]
    format: Option<String>,

    /// Visit vertices in a seeded random order.
    #[arg(long)]
    shuffle: bool,

    /// Keep running double greedy when the objective turns out not to be
    /// DR-submodular.
    #[arg(long)]
    skip_dr_check: bool,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    Algorithm::parse(s).ok_or_else(|| format!("unknown algorithm {s:?} (expected SG, DG, FastDG or PolyDG)"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let format = match (&cli.format, &cli.out) {
        (Some(f), _) => f.parse()?,
        (None, Some(path)) => ReportFormat::from_path(path).unwrap_or(ReportFormat::Csv),
        (None, None) => ReportFormat::Csv,
    };
    let input: InputSpec = cli.input.parse()?;
    let config = ExperimentConfig {
        input,
        algorithms: cli.algorithms,
        epsilons: cli.epsilons,
        bound: cli.bound,
        p: cli.p,
        trials: cli.trials,
        base_seed: cli.seed,
        shuffle: cli.shuffle,
        skip_dr_check: cli.skip_dr_check,
        output: cli.out.map(|path| OutputSpec { path, format }),
    };
    config.validate()?;

    let graph = config
        .input
        .load()
        .with_context(|| format!("loading {}", config.input))?;
    let bounds = BoxConstraint::uniform(graph.vertex_count(), config.bound)?;
    let objective = RevenueObjective::new(graph.clone(), config.p)?;
    if !objective.is_dr_submodular_on(&bounds)? {
        eprintln!(
            "warning: the revenue objective is not DR-submodular for p = {} and B = {}; \
             approximation guarantees do not apply{}",
            config.p,
            config.bound,
            if config.skip_dr_check {
                ""
            } else {
                " and DG stops at the first violation (see --skip-dr-check)"
            }
        );
    }

    let reports = run_on_graph(&config, graph)?;
    match &config.output {
        Some(out) => {
            write_report(&reports, &out.path, out.format).with_context(|| format!("writing {}", out.path.display()))?;
            eprintln!("wrote {} rows to {}", reports.len(), out.path.display());
        }
        None => write_report_to(&reports, io::stdout().lock(), format)?,
    }
    Ok(())
}
