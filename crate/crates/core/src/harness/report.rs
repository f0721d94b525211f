use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::{ExperimentConfig, RunReport, SolveRecord};

pub const CSV_HEADER: &str = "step,t,iterations,initial_residual,final_residual,guess_time_s,solve_time_s";

/// Echo key listing the steps that did not converge.
const UNCONVERGED_KEY: &str = "unconverged";

fn render(report: &RunReport) -> String {
    let mut out = String::new();
    for (k, v) in report.config.echo() {
        let _ = writeln!(out, "# {k}={v}");
    }
    let bad: Vec<String> = report.unconverged_steps().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "# {UNCONVERGED_KEY}={}", bad.join(";"));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &report.records {
        let _ = writeln!(
            out,
            "{},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.step, r.t, r.iterations, r.initial_residual, r.final_residual, r.guess_time_s, r.solve_time_s
        );
    }
    out
}

/// Writes `#`-prefixed config echo lines, the header row and one row per
/// step. Reals are written with 17 significant digits and read back
/// bit-exactly by [`read_report`].
pub fn write_report(report: &RunReport, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, render(report)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_report(path: &Path) -> Result<RunReport> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };

    let mut config = ExperimentConfig::default();
    let mut unconverged = Vec::new();
    let mut records = Vec::new();
    let mut seen_header = false;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(echo) = line.strip_prefix('#') {
            let (k, v) = echo
                .trim()
                .split_once('=')
                .ok_or_else(|| err(lineno, format!("expected '# key=value', got {line:?}")))?;
            if k == UNCONVERGED_KEY {
                for s in v.split(';').filter(|s| !s.is_empty()) {
                    unconverged.push(s.parse::<usize>().map_err(|e| err(lineno, e.to_string()))?);
                }
            } else {
                config.set(k, v).map_err(|e| err(lineno, e.to_string()))?;
            }
            continue;
        }
        if !seen_header {
            if line != CSV_HEADER {
                return Err(err(lineno, format!("expected header {CSV_HEADER:?}")));
            }
            seen_header = true;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(err(lineno, format!("expected 7 fields, got {}", fields.len())));
        }
        let real = |k: usize| fields[k].parse::<f64>().map_err(|e| err(lineno, format!("field {k}: {e}")));
        let int = |k: usize| fields[k].parse::<usize>().map_err(|e| err(lineno, format!("field {k}: {e}")));
        let step = int(0)?;
        records.push(SolveRecord {
            step,
            t: real(1)?,
            iterations: int(2)?,
            initial_residual: real(3)?,
            final_residual: real(4)?,
            guess_time_s: real(5)?,
            solve_time_s: real(6)?,
            converged: !unconverged.contains(&step),
            method: config.method,
        });
    }
    if !seen_header {
        return Err(err(text.lines().count(), "missing header row".into()));
    }
    Ok(RunReport { config, records })
}

/// Table-style comparison of a method run against a baseline run.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub baseline: String,
    pub method: String,
    pub history_size: usize,
    pub reduced_dim: usize,
    pub baseline_mean_iterations: f64,
    pub method_mean_iterations: f64,
    pub baseline_mean_time: f64,
    pub method_mean_time: f64,
    /// Baseline total over method total.
    pub iteration_speedup: f64,
    pub time_speedup: f64,
}

impl Comparison {
    pub const TABLE_HEADER: &'static str =
        "method,M,m,avg_iterations,iterations_speedup,avg_time_per_step_s,time_speedup";

    pub fn table_row(&self) -> String {
        format!(
            "{},{},{},{:.2},{:.2},{:.4e},{:.2}",
            self.method,
            self.history_size,
            self.reduced_dim,
            self.method_mean_iterations,
            self.iteration_speedup,
            self.method_mean_time,
            self.time_speedup
        )
    }
}

/// Speedups of `method` relative to `baseline` over all solved systems.
pub fn compare_runs(baseline: &RunReport, method: &RunReport) -> Result<Comparison> {
    let (a, b) = (&baseline.config, &method.config);
    if (a.nx, a.ny, a.nt) != (b.nx, b.ny, b.nt) || baseline.records.len() != method.records.len() {
        return Err(Error::InvalidArgument(format!(
            "runs differ: {}x{} grid / {} steps vs {}x{} grid / {} steps",
            a.nx, a.ny, baseline.records.len(), b.nx, b.ny, method.records.len()
        )));
    }
    let time = |r: &RunReport| -> f64 { r.records.iter().map(|s| s.guess_time_s + s.solve_time_s).sum() };
    Ok(Comparison {
        baseline: a.method.to_string(),
        method: b.method.to_string(),
        history_size: b.history_size,
        reduced_dim: b.reduced_dim,
        baseline_mean_iterations: baseline.mean_iterations(),
        method_mean_iterations: method.mean_iterations(),
        baseline_mean_time: baseline.mean_time_per_step(),
        method_mean_time: method.mean_time_per_step(),
        iteration_speedup: baseline.total_iterations() as f64 / method.total_iterations() as f64,
        time_speedup: time(baseline) / time(method),
    })
}
