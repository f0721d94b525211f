use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use seqaccel::harness::{compare_runs, read_report, run_experiment, write_report, Comparison, ExperimentConfig};

#[derive(Parser)]
#[command(name = "seqaccel", version, about = "Initial-guess strategies for GMRES on a sequence of elliptic systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one strategy over the system sequence and report telemetry.
    Run(Box<RunArgs>),
    /// Compare report files against a baseline report.
    Compare {
        /// Report of the reference run.
        baseline: PathBuf,
        /// Reports to compare against it.
        #[arg(required = true)]
        runs: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value configuration file; flags override its values.
    #[arg(long, short)]
    config: Option<PathBuf>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    nt: Option<String>,
    /// Interior points per direction, `N` or `NXxNY`.
    #[arg(long)]
    grid: Option<String>,
    /// baseline, pod or rand.
    #[arg(long)]
    method: Option<String>,
    /// History size.
    #[arg(long = "M", value_name = "M")]
    history_size: Option<String>,
    /// Reduced dimension.
    #[arg(long = "m", value_name = "m")]
    reduced_dim: Option<String>,
    /// Steps between sketch recomputations.
    #[arg(long)]
    refresh: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// CSV report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Any other configuration key, e.g. `--set t0=2.0 --set rhs=continuous`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    extra: Vec<String>,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        for kv in &self.extra {
            let (k, v) = kv
                .split_once('=')
                .with_context(|| format!("--set expects KEY=VALUE, got {kv:?}"))?;
            cfg.set(k, v)?;
        }
        let flags = [
            ("dt", &self.dt),
            ("nt", &self.nt),
            ("grid", &self.grid),
            ("method", &self.method),
            ("M", &self.history_size),
            ("m", &self.reduced_dim),
            ("refresh", &self.refresh),
            ("tol", &self.tol),
            ("seed", &self.seed),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v).with_context(|| format!("--{key}"))?;
            }
        }
        if let Some(out) = &self.out {
            cfg.output = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(args: &RunArgs) -> Result<()> {
    let cfg = args.config()?;
    let report = run_experiment(&cfg)?;
    let warm = if cfg.method == seqaccel::recycle::GuessMethod::Baseline { 1 } else { cfg.history_size };
    println!(
        "method={} grid={}x{} steps={} M={} m={} dt={}",
        cfg.method, cfg.nx, cfg.ny, cfg.nt, cfg.history_size, cfg.reduced_dim, cfg.dt
    );
    println!("mean iterations:               {:.3}", report.mean_iterations());
    println!("mean iterations after warm-up: {:.3}", report.mean_iterations_from(warm));
    println!("mean time per step:            {:.4e} s", report.mean_time_per_step());
    let bad = report.unconverged_steps();
    if bad.is_empty() {
        println!("all steps converged");
    } else {
        println!("unconverged steps: {bad:?}");
    }
    if let Some(path) = &cfg.output {
        write_report(&report, path)?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn compare(baseline: &Path, runs: &[PathBuf]) -> Result<()> {
    let base = read_report(baseline)?;
    println!("{}", Comparison::TABLE_HEADER);
    for path in runs {
        let other = read_report(path)?;
        let c = compare_runs(&base, &other).with_context(|| format!("comparing {}", path.display()))?;
        println!("{}", c.table_row());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args),
        Command::Compare { baseline, runs } => compare(baseline, runs),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
