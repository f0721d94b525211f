use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::krylov::GmresConfig;
use crate::recycle::{GuessMethod, DEFAULT_REFRESH_PERIOD, RNG_NAME};
use crate::testcase::{Grid2d, RhsMode, TimeGrid, DEFAULT_NT, DEFAULT_T0};

/// Everything that determines a run. Serialized as flat `key=value` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub nx: usize,
    pub ny: usize,
    pub t0: f64,
    pub dt: f64,
    pub nt: usize,
    pub method: GuessMethod,
    /// History size M.
    pub history_size: usize,
    /// Reduced dimension m.
    pub reduced_dim: usize,
    pub refresh_period: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
    pub rhs: RhsMode,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            nx: 100,
            ny: 100,
            t0: DEFAULT_T0,
            dt: 1e-3,
            nt: DEFAULT_NT,
            method: GuessMethod::Rand,
            history_size: 20,
            reduced_dim: 10,
            refresh_period: DEFAULT_REFRESH_PERIOD,
            tol: 1e-7,
            max_iters: 1000,
            seed: 0,
            rhs: RhsMode::Discrete,
            output: None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{key}: cannot parse {value:?}")))
}

impl ExperimentConfig {
    /// Sets one field from its textual form.
    ///
    /// `grid` accepts `N` or `NXxNY`. `rng` is accepted for round-tripping
    /// report headers and must name the built-in generator.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "nx" => self.nx = parse_num(key, value)?,
            "ny" => self.ny = parse_num(key, value)?,
            "grid" => {
                let (nx, ny) = match value.split_once(['x', 'X']) {
                    Some((a, b)) => (parse_num(key, a)?, parse_num(key, b)?),
                    None => {
                        let n = parse_num(key, value)?;
                        (n, n)
                    }
                };
                self.nx = nx;
                self.ny = ny;
            }
            "t0" => self.t0 = parse_num(key, value)?,
            "dt" => self.dt = parse_num(key, value)?,
            "nt" => self.nt = parse_num(key, value)?,
            "method" => self.method = value.parse()?,
            "M" => self.history_size = parse_num(key, value)?,
            "m" => self.reduced_dim = parse_num(key, value)?,
            "refresh" | "refresh_period" => self.refresh_period = parse_num(key, value)?,
            "tol" => self.tol = parse_num(key, value)?,
            "max_iters" => self.max_iters = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "rhs" => {
                self.rhs = match value {
                    "discrete" => RhsMode::Discrete,
                    "continuous" => RhsMode::Continuous,
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "rhs: expected discrete or continuous, got {other:?}"
                        )))
                    }
                }
            }
            "out" | "output" => {
                self.output = if value.is_empty() { None } else { Some(PathBuf::from(value)) }
            }
            "rng" => {
                if value != RNG_NAME {
                    return Err(Error::InvalidArgument(format!(
                        "rng: only {RNG_NAME} is available, got {value:?}"
                    )));
                }
            }
            other => return Err(Error::InvalidArgument(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str, origin: &Path) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| Error::Parse {
                path: origin.to_path_buf(),
                line: i + 1,
                msg,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected key=value, got {line:?}")))?;
            self.set(k, v).map_err(|e| parse_err(e.to_string()))?;
        }
        Ok(())
    }

    /// Defaults overridden by the file's contents.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::default();
        cfg.apply_text(&text, path)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        Grid2d::new(self.nx, self.ny)?;
        TimeGrid::new(self.t0, self.dt, self.nt)?;
        self.gmres().validate()?;
        if self.method != GuessMethod::Baseline {
            if self.reduced_dim == 0 || self.reduced_dim > self.history_size {
                return Err(Error::InvalidArgument(format!(
                    "need 1 <= m <= M, got m={}, M={}",
                    self.reduced_dim, self.history_size
                )));
            }
            if self.refresh_period == 0 {
                return Err(Error::InvalidArgument("refresh must be >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid2d> {
        Grid2d::new(self.nx, self.ny)
    }

    pub fn time(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.t0, self.dt, self.nt)
    }

    pub fn gmres(&self) -> GmresConfig {
        GmresConfig {
            tol: self.tol,
            max_iters: self.max_iters,
            restart: None,
        }
    }

    /// Ordered `(key, value)` pairs; feeding them back through
    /// [`ExperimentConfig::set`] reproduces the configuration.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let mut kv = vec![
            ("nx", self.nx.to_string()),
            ("ny", self.ny.to_string()),
            ("t0", self.t0.to_string()),
            ("dt", self.dt.to_string()),
            ("nt", self.nt.to_string()),
            ("method", self.method.to_string()),
            ("M", self.history_size.to_string()),
            ("m", self.reduced_dim.to_string()),
            ("refresh", self.refresh_period.to_string()),
            ("tol", self.tol.to_string()),
            ("max_iters", self.max_iters.to_string()),
            ("seed", self.seed.to_string()),
            ("rng", RNG_NAME.to_string()),
            (
                "rhs",
                match self.rhs {
                    RhsMode::Discrete => "discrete",
                    RhsMode::Continuous => "continuous",
                }
                .to_string(),
            ),
        ];
        if let Some(out) = &self.output {
            kv.push(("out", out.display().to_string()));
        }
        kv
    }
}
