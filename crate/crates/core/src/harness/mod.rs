//! Experiment driver: runs one guess strategy over the test-problem
//! sequence, records per-step telemetry and writes CSV reports.
//!
//! Per step the driver asks the [`Accelerator`] for a starting vector,
//! factors ILU(0), runs GMRES and pushes the solution into the history.
//! `guess_time_s` covers basis construction and the projected least-squares
//! solve; `solve_time_s` covers the ILU(0) factorization and GMRES. A step
//! that fails to converge is recorded and the run continues with the best
//! iterate.

mod config;
mod report;

use std::time::Instant;

pub use config::ExperimentConfig;
pub use report::{compare_runs, read_report, write_report, Comparison, CSV_HEADER};

use crate::error::Result;
use crate::krylov::{gmres, Ilu0Factors, SolveStats};
use crate::la::CsrMatrix;
use crate::recycle::{Accelerator, GuessMethod, GuessReport};
use crate::testcase::system_sequence;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRecord {
    pub step: usize,
    pub t: f64,
    pub iterations: usize,
    /// `‖b − A x₀‖₂` for the starting vector.
    pub initial_residual: f64,
    /// `‖b − A x‖₂` of the accepted solution.
    pub final_residual: f64,
    pub guess_time_s: f64,
    pub solve_time_s: f64,
    pub converged: bool,
    pub method: GuessMethod,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub records: Vec<SolveRecord>,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

impl RunReport {
    pub fn total_iterations(&self) -> usize {
        self.records.iter().map(|r| r.iterations).sum()
    }

    /// NaN for an empty run.
    pub fn mean_iterations(&self) -> f64 {
        self.mean_iterations_from(0)
    }

    /// Mean over steps `start..`, e.g. excluding the warm-up.
    pub fn mean_iterations_from(&self, start: usize) -> f64 {
        mean(self.records.iter().skip(start).map(|r| r.iterations as f64))
    }

    /// Mean of guess plus solve time per step.
    pub fn mean_time_per_step(&self) -> f64 {
        mean(self.records.iter().map(|r| r.guess_time_s + r.solve_time_s))
    }

    pub fn mean_guess_time_from(&self, start: usize) -> f64 {
        mean(self.records.iter().skip(start).map(|r| r.guess_time_s))
    }

    pub fn unconverged_steps(&self) -> Vec<usize> {
        self.records.iter().filter(|r| !r.converged).map(|r| r.step).collect()
    }
}

/// What an observer sees after each step.
#[derive(Debug)]
pub struct StepView<'a> {
    pub record: &'a SolveRecord,
    pub matrix: &'a CsrMatrix,
    pub rhs: &'a [f64],
    pub guess: &'a GuessReport,
    pub solution: &'a [f64],
    pub stats: &'a SolveStats,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunReport> {
    run_experiment_with(cfg, |_| {})
}

/// [`run_experiment`] with a callback after every step.
pub fn run_experiment_with(
    cfg: &ExperimentConfig,
    mut observer: impl FnMut(&StepView<'_>),
) -> Result<RunReport> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let gmres_cfg = cfg.gmres();
    let mut acc = Accelerator::new(
        cfg.method,
        grid.n(),
        cfg.history_size,
        cfg.reduced_dim,
        cfg.refresh_period,
        cfg.seed,
    )?;
    let mut records = Vec::with_capacity(cfg.nt);
    for system in system_sequence(grid, cfg.time()?, cfg.rhs) {
        let system = system?;
        let clock = Instant::now();
        let guess = acc.guess(&system.matrix, &system.rhs)?;
        let guess_time_s = clock.elapsed().as_secs_f64();

        let clock = Instant::now();
        let ilu = Ilu0Factors::factor(&system.matrix)?;
        let (x, stats) = gmres(&system.matrix, Some(&ilu), &system.rhs, &guess.guess, &gmres_cfg)?;
        let solve_time_s = clock.elapsed().as_secs_f64();

        let record = SolveRecord {
            step: system.step,
            t: system.t,
            iterations: stats.iterations,
            initial_residual: stats.initial_residual,
            final_residual: stats.final_residual,
            guess_time_s,
            solve_time_s,
            converged: stats.converged,
            method: cfg.method,
        };
        observer(&StepView {
            record: &record,
            matrix: &system.matrix,
            rhs: &system.rhs,
            guess: &guess,
            solution: &x,
            stats: &stats,
        });
        records.push(record);
        acc.record(x)?;
    }
    Ok(RunReport {
        config: cfg.clone(),
        records,
    })
}
