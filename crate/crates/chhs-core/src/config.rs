//! Run configuration: a line-oriented `key = value` format with `#` comments
//! and an optional `[mg]` section, plus the two experiment presets.
//!
//! ```text
//! preset = benchmark      # optional; benchmark | spinodal
//! nx = 64
//! ny = 64
//! dt_ratio = 0.05         # dt = ratio * h (exclusive with dt = ...)
//! T_final = 0.8
//! output_dir = out
//!
//! [mg]
//! tol = 1e-10
//! ```
//!
//! Unknown keys, duplicate keys, and grids the multigrid ladder cannot coarsen
//! are rejected with the offending line or key named.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::fas::MgConfig;
use crate::grid::GridSpec;
use crate::scheme::SchemeParams;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: unknown section `[{name}]` (only [mg] is recognized)")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: cannot parse value `{value}` for `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        value: String,
        reason: String,
    },
    #[error("missing required key `{0}` (set it or choose a preset)")]
    MissingKey(&'static str),
    #[error("`dt` and `dt_ratio` are mutually exclusive; set exactly one")]
    DtConflict,
    #[error("invalid grid: {0}")]
    Grid(#[from] crate::grid::GridError),
    #[error("invalid parameters: {0}")]
    Params(#[from] crate::scheme::ParamError),
    #[error(
        "grid {nx}x{ny} violates the multigrid constraint: cell counts must be \
         the coarsest size {coarsest} times a power of two so levels can halve \
         down to the coarsest grid"
    )]
    MultigridLadder {
        nx: usize,
        ny: usize,
        coarsest: usize,
    },
    #[error("{key} must be {constraint}, got {value}")]
    OutOfRange {
        key: &'static str,
        constraint: &'static str,
        value: f64,
    },
}

/// How the time step is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStep {
    /// Fixed dt.
    Fixed(f64),
    /// dt = ratio * h, tracking the grid (the refinement-path convention).
    RatioOfH(f64),
}

impl TimeStep {
    pub fn resolve(&self, h: f64) -> f64 {
        match *self {
            TimeStep::Fixed(dt) => dt,
            TimeStep::RatioOfH(r) => r * h,
        }
    }
}

/// Initial condition selector.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// The smooth cosine-product profile of the convergence benchmark.
    Benchmark,
    /// Uniform random perturbation phi_bar + amp*(2r - 1), seeded.
    Spinodal,
    /// Load phi^0 from a field snapshot file.
    File(PathBuf),
}

impl fmt::Display for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialData::Benchmark => write!(f, "benchmark"),
            InitialData::Spinodal => write!(f, "spinodal"),
            InitialData::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// How phi^1 is produced for the two-step scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bootstrap {
    /// One step of the first-order convex-splitting scheme (default).
    FirstOrder,
    /// Use the projected initial profile itself as phi^1 (phi^1 = phi^0);
    /// intended for analytic/testing setups where the initial data is the
    /// exact profile at both history levels.
    ProjectExact,
}

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub lx: f64,
    pub ly: f64,
    pub nx: usize,
    pub ny: usize,
    pub time_step: TimeStep,
    pub epsilon: f64,
    pub gamma: f64,
    pub t_final: f64,
    pub init: InitialData,
    pub phi_bar: f64,
    pub noise_amp: f64,
    pub rng_seed: u64,
    pub output_dir: PathBuf,
    pub output_every: usize,
    pub mg: MgConfig,
    pub bootstrap: Bootstrap,
}

impl RunConfig {
    /// Convergence-benchmark defaults: Lx = Ly = 3.2, gradient-energy
    /// coefficient 0.2 (epsilon = sqrt(0.2)), gamma = 2, s = 0.05 h, T = 0.8,
    /// cosine-product initial data.
    ///
    /// The reference convergence table is reproduced with eps^2 = 0.2; the
    /// quoted "0.2" names the coefficient of the Laplacian in the chemical
    /// potential, not its square root.
    pub fn benchmark() -> Self {
        Self {
            lx: 3.2,
            ly: 3.2,
            nx: 32,
            ny: 32,
            time_step: TimeStep::RatioOfH(0.05),
            epsilon: 0.2f64.sqrt(),
            gamma: 2.0,
            t_final: 0.8,
            init: InitialData::Benchmark,
            phi_bar: 0.0,
            noise_amp: 0.0,
            rng_seed: 1,
            output_dir: PathBuf::from("out"),
            output_every: 100,
            mg: MgConfig::default(),
            bootstrap: Bootstrap::FirstOrder,
        }
    }

    /// Spinodal-decomposition defaults: Lx = Ly = 6.4, gradient-energy
    /// coefficient 0.03 (epsilon = sqrt(0.03), same convention as the
    /// benchmark preset), s = 0.01, phi_bar = -0.05, noise 0.05. Grid
    /// desk-scaled to 128^2.
    pub fn spinodal() -> Self {
        Self {
            lx: 6.4,
            ly: 6.4,
            nx: 128,
            ny: 128,
            time_step: TimeStep::Fixed(0.01),
            epsilon: 0.03f64.sqrt(),
            gamma: 2.0,
            t_final: 5.0,
            init: InitialData::Spinodal,
            phi_bar: -0.05,
            noise_amp: 0.05,
            rng_seed: 1,
            output_dir: PathBuf::from("out"),
            output_every: 100,
            mg: MgConfig::default(),
            bootstrap: Bootstrap::FirstOrder,
        }
    }

    pub fn grid(&self) -> Result<GridSpec, ConfigError> {
        Ok(GridSpec::new(self.lx, self.ly, self.nx, self.ny)?)
    }

    pub fn dt(&self) -> f64 {
        self.time_step.resolve(self.lx / self.nx as f64)
    }

    pub fn scheme_params(&self) -> Result<SchemeParams, ConfigError> {
        Ok(SchemeParams::new(self.epsilon, self.gamma, self.dt())?)
    }

    /// Validate every cross-field invariant: square cells, the multigrid
    /// ladder, positive parameters.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let spec = self.grid()?;
        ladder_ok(spec.nx, spec.ny, self.mg.coarsest)?;
        let _ = self.scheme_params()?;
        if self.t_final < 0.0 {
            return Err(ConfigError::OutOfRange {
                key: "T_final",
                constraint: "nonnegative",
                value: self.t_final,
            });
        }
        if self.noise_amp < 0.0 {
            return Err(ConfigError::OutOfRange {
                key: "noise_amp",
                constraint: "nonnegative",
                value: self.noise_amp,
            });
        }
        if !(self.mg.tol > 0.0) {
            return Err(ConfigError::OutOfRange {
                key: "mg.tol",
                constraint: "positive",
                value: self.mg.tol,
            });
        }
        Ok(())
    }
}

/// Both cell counts must halve cleanly down to the coarsest size.
fn ladder_ok(nx: usize, ny: usize, coarsest: usize) -> Result<(), ConfigError> {
    let (mut a, mut b) = (nx, ny);
    while a.min(b) > coarsest {
        if a % 2 != 0 || b % 2 != 0 {
            return Err(ConfigError::MultigridLadder { nx, ny, coarsest });
        }
        a /= 2;
        b /= 2;
    }
    if a.min(b) != coarsest && a.min(b) < coarsest {
        // smaller than the coarsest grid: a single-level solve, allowed
        return Ok(());
    }
    if a.min(b) != coarsest {
        return Err(ConfigError::MultigridLadder { nx, ny, coarsest });
    }
    Ok(())
}

pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, ConfigError> {
    // first pass: collect (section, key, value, line), reject duplicates
    let mut pairs: Vec<(String, String, String, usize)> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let stripped = stripped.trim();
        if stripped.is_empty() {
            continue;
        }
        if let Some(name) = stripped.strip_prefix('[') {
            let name = name.strip_suffix(']').unwrap_or(name).trim().to_string();
            if name != "mg" {
                return Err(ConfigError::UnknownSection { line, name });
            }
            section = name;
            continue;
        }
        let Some((key, value)) = stripped.split_once('=') else {
            return Err(ConfigError::Malformed {
                line,
                text: stripped.to_string(),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        let qualified = if section.is_empty() {
            key.clone()
        } else {
            format!("{section}.{key}")
        };
        if !seen.insert(qualified.clone()) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: qualified,
            });
        }
        pairs.push((section.clone(), key, value, line));
    }

    // preset (if any) supplies the defaults; explicit keys override
    let mut cfg = match pairs
        .iter()
        .find(|(s, k, _, _)| s.is_empty() && k == "preset")
    {
        None => RunConfig::benchmark(),
        Some((_, _, v, line)) => match v.as_str() {
            "benchmark" => RunConfig::benchmark(),
            "spinodal" => RunConfig::spinodal(),
            other => {
                return Err(ConfigError::BadValue {
                    line: *line,
                    key: "preset".into(),
                    value: other.into(),
                    reason: "expected `benchmark` or `spinodal`".into(),
                })
            }
        },
    };

    let mut saw_dt = false;
    let mut saw_ratio = false;
    for (section, key, value, line) in &pairs {
        let line = *line;
        let bad = |reason: &str| ConfigError::BadValue {
            line,
            key: if section.is_empty() {
                key.clone()
            } else {
                format!("{section}.{key}")
            },
            value: value.clone(),
            reason: reason.to_string(),
        };
        let f = || value.parse::<f64>().map_err(|e| bad(&e.to_string()));
        let n = || value.parse::<usize>().map_err(|e| bad(&e.to_string()));
        if section == "mg" {
            match key.as_str() {
                "nu1" => cfg.mg.nu1 = n()?,
                "nu2" => cfg.mg.nu2 = n()?,
                "coarsest" => cfg.mg.coarsest = n()?,
                "tol" => cfg.mg.tol = f()?,
                "max_cycles" => cfg.mg.max_cycles = n()?,
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: format!("mg.{key}"),
                    });
                }
            }
            continue;
        }
        match key.as_str() {
            "preset" => {}
            "Lx" => cfg.lx = f()?,
            "Ly" => cfg.ly = f()?,
            "nx" => cfg.nx = n()?,
            "ny" => cfg.ny = n()?,
            "dt" => {
                cfg.time_step = TimeStep::Fixed(f()?);
                saw_dt = true;
            }
            "dt_ratio" => {
                cfg.time_step = TimeStep::RatioOfH(f()?);
                saw_ratio = true;
            }
            "epsilon" => cfg.epsilon = f()?,
            "gamma" => cfg.gamma = f()?,
            "T_final" => cfg.t_final = f()?,
            "init" => {
                cfg.init = if let Some(p) = value.strip_prefix("file:") {
                    InitialData::File(PathBuf::from(p))
                } else {
                    match value.as_str() {
                        "benchmark" => InitialData::Benchmark,
                        "spinodal" => InitialData::Spinodal,
                        _ => return Err(bad("expected benchmark | spinodal | file:PATH")),
                    }
                }
            }
            "phi_bar" => cfg.phi_bar = f()?,
            "noise_amp" => cfg.noise_amp = f()?,
            "rng_seed" => cfg.rng_seed = value.parse::<u64>().map_err(|e| bad(&e.to_string()))?,
            "output_dir" => cfg.output_dir = PathBuf::from(value),
            "output_every" => cfg.output_every = n()?,
            "bootstrap" => {
                cfg.bootstrap = match value.as_str() {
                    "first_order" => Bootstrap::FirstOrder,
                    "project_exact" => Bootstrap::ProjectExact,
                    _ => return Err(bad("expected first_order | project_exact")),
                }
            }
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.clone(),
                })
            }
        }
    }
    if saw_dt && saw_ratio {
        return Err(ConfigError::DtConflict);
    }

    cfg.validate()?;
    Ok(cfg)
}
