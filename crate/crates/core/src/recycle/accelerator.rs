use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::la::{norm2, CsrMatrix};

use super::{compute_initial_guess, pod_basis, GuessReport, GuessSource, HistoryWindow, SketchState};

/// Name of the generator behind [`Accelerator`]'s Gaussian draws.
pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuessMethod {
    /// Previous solution.
    Baseline,
    /// Projection onto the leading POD modes of the history.
    Pod,
    /// Projection onto the range of a progressively updated Gaussian sketch.
    Rand,
}

impl GuessMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            GuessMethod::Baseline => "baseline",
            GuessMethod::Pod => "pod",
            GuessMethod::Rand => "rand",
        }
    }
}

impl fmt::Display for GuessMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GuessMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "baseline" => Ok(GuessMethod::Baseline),
            "pod" => Ok(GuessMethod::Pod),
            "rand" => Ok(GuessMethod::Rand),
            other => Err(Error::InvalidArgument(format!(
                "unknown method {other:?} (expected baseline, pod or rand)"
            ))),
        }
    }
}

/// Per-sequence state: history window, optional sketch and RNG stream.
///
/// Call [`Accelerator::guess`] before each solve and
/// [`Accelerator::record`] with the solution afterwards. Until the window
/// holds `M` solutions the previous solution is returned (zero at the very
/// first step).
#[derive(Debug, Clone)]
pub struct Accelerator {
    method: GuessMethod,
    reduced_dim: usize,
    refresh_period: usize,
    window: HistoryWindow,
    sketch: Option<SketchState>,
    /// Column evicted by the last push, not yet removed from the sketch.
    pending_eviction: Option<Vec<f64>>,
    rng: ChaCha8Rng,
}

impl Accelerator {
    pub fn new(
        method: GuessMethod,
        n: usize,
        history_size: usize,
        reduced_dim: usize,
        refresh_period: usize,
        seed: u64,
    ) -> Result<Self> {
        let capacity = match method {
            GuessMethod::Baseline => 1,
            GuessMethod::Pod | GuessMethod::Rand => {
                if reduced_dim == 0 || reduced_dim > history_size {
                    return Err(Error::InvalidArgument(format!(
                        "need 1 <= m <= M, got m={reduced_dim}, M={history_size}"
                    )));
                }
                if refresh_period == 0 {
                    return Err(Error::InvalidArgument("refresh_period must be >= 1".into()));
                }
                history_size
            }
        };
        Ok(Self {
            method,
            reduced_dim,
            refresh_period,
            window: HistoryWindow::new(n, capacity)?,
            sketch: None,
            pending_eviction: None,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn method(&self) -> GuessMethod {
        self.method
    }

    pub fn window(&self) -> &HistoryWindow {
        &self.window
    }

    pub fn sketch(&self) -> Option<&SketchState> {
        self.sketch.as_ref()
    }

    /// True once guesses come from a compressed subspace.
    pub fn is_warm(&self) -> bool {
        self.method != GuessMethod::Baseline && self.window.is_full()
    }

    fn sync_sketch(&mut self) -> Result<()> {
        match (&mut self.sketch, self.pending_eviction.take()) {
            (Some(s), Some(old)) => s.progressive_update(&self.window, &old, &mut self.rng),
            (None, _) if self.window.is_full() => {
                self.sketch = Some(SketchState::from_scratch(
                    &self.window,
                    self.reduced_dim,
                    self.refresh_period,
                    &mut self.rng,
                )?);
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn guess(&mut self, a: &CsrMatrix, b: &[f64]) -> Result<GuessReport> {
        let Some(prev) = self.window.newest() else {
            return Ok(GuessReport {
                guess: vec![0.0; b.len()],
                source: GuessSource::Zero,
                reduced_dim: 0,
                guess_residual: norm2(b),
                basis_time: 0.0,
                lstsq_time: 0.0,
            });
        };
        if !self.is_warm() {
            let guess = prev.to_vec();
            let guess_residual = norm2(&a.residual(&guess, b)?);
            return Ok(GuessReport {
                guess,
                source: GuessSource::Previous,
                reduced_dim: 0,
                guess_residual,
                basis_time: 0.0,
                lstsq_time: 0.0,
            });
        }
        let start = Instant::now();
        let q = match self.method {
            GuessMethod::Pod => pod_basis(&self.window, self.reduced_dim)?,
            GuessMethod::Rand => {
                self.sync_sketch()?;
                self.sketch.as_ref().expect("window is full").basis()?
            }
            GuessMethod::Baseline => unreachable!(),
        };
        let basis_time = start.elapsed().as_secs_f64();
        let mut report = compute_initial_guess(a, b, &q)?;
        report.basis_time = basis_time;
        Ok(report)
    }

    /// Pushes a converged solution into the history.
    pub fn record(&mut self, x: Vec<f64>) -> Result<()> {
        if self.method == GuessMethod::Rand {
            self.sync_sketch()?;
        }
        let evicted = self.window.push(x)?;
        if self.method == GuessMethod::Rand {
            self.pending_eviction = evicted;
        }
        Ok(())
    }
}
