//! Simulation driver: bootstrap, time stepping, per-step diagnostics, and
//! persistence of the time series and field snapshots.

use std::path::Path;
use std::time::Instant;

use thiserror::Error;

use crate::config::{Bootstrap, ConfigError, InitialData, RunConfig};
use crate::diagnostics::{
    dissipation_defect, divergence_residual, energy_eh, energy_fh, grad_mu_sq, h3_increment, mass,
    velocity_sq, DiagnosticsRecord,
};
use crate::fas::{MgConfig, SolveError};
use crate::grid::CellField;
use crate::init::{init_benchmark, init_spinodal};
use crate::io::{read_snapshot, write_snapshot, IoError, TimeseriesWriter};
use crate::scheme::{advance_step, bootstrap_first_step, SchemeParams, TimeState};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("solver failed at step {step} (t = {t:.6}): {source}")]
    Solver {
        step: usize,
        t: f64,
        #[source]
        source: SolveError,
    },
    #[error("the convergence study requires `dt_ratio` so the refinement path keeps s = c*h")]
    NeedsDtRatio,
}

/// A running simulation with its per-step diagnostics ledger.
///
/// Step 0 is the initial profile; step 1 comes from the configured bootstrap;
/// every later step is the second-order scheme. The dissipation defect is
/// recorded from step 2 on (the inequality compares two consecutive
/// F_h values of the two-step scheme).
pub struct Simulation {
    pub params: SchemeParams,
    pub mg: MgConfig,
    pub bootstrap: Bootstrap,
    pub state: TimeState,
    pub records: Vec<DiagnosticsRecord>,
    /// largest ||div_h u||_2 seen over the run (the CSV carries the inf norm)
    pub max_div_u_l2: f64,
    h3_sum: f64,
}

impl Simulation {
    pub fn new(phi0: &CellField, params: SchemeParams, mg: MgConfig, bootstrap: Bootstrap) -> Self {
        let state = TimeState::initial(phi0, &params);
        let rec0 = DiagnosticsRecord {
            step: 0,
            t: 0.0,
            e_h: energy_eh(&state.phi_m, params.epsilon),
            f_h: energy_eh(&state.phi_m, params.epsilon),
            mass: mass(&state.phi_m),
            grad_mu_sq: 0.0,
            u_sq: 0.0,
            dissipation_defect: 0.0,
            h3_sum: 0.0,
            div_u_inf: 0.0,
            vcycles: 0,
        };
        Self {
            params,
            mg,
            bootstrap,
            state,
            records: vec![rec0],
            max_div_u_l2: 0.0,
            h3_sum: 0.0,
        }
    }

    pub fn last_record(&self) -> &DiagnosticsRecord {
        self.records.last().expect("records never empty")
    }

    /// Advance one step (bootstrap on the first call) and append its record.
    pub fn advance(&mut self) -> Result<&DiagnosticsRecord, RunError> {
        let step = self.state.step + 1;
        let t = step as f64 * self.params.dt;
        let solver_err = |source| RunError::Solver { step, t, source };

        let cycles = if self.state.step == 0 {
            match self.bootstrap {
                Bootstrap::FirstOrder => {
                    let (state, report) =
                        bootstrap_first_step(&self.state.phi_m, &self.params, &self.mg)
                            .map_err(solver_err)?;
                    self.state = state;
                    report.cycles
                }
                Bootstrap::ProjectExact => {
                    // phi^1 := the projected initial profile itself
                    self.state.step = 1;
                    self.state.time = self.params.dt;
                    0
                }
            }
        } else {
            advance_step(&mut self.state, &self.params, &self.mg)
                .map_err(solver_err)?
                .cycles
        };

        let eps = self.params.epsilon;
        let fh = energy_fh(&self.state.phi_m, &self.state.phi_mm1, eps);
        let gmu = grad_mu_sq(&self.state.mu);
        let usq = velocity_sq(&self.state.u);
        let defect = if self.state.step >= 2 {
            let prev_fh = self.records.last().unwrap().f_h;
            dissipation_defect(fh, prev_fh, gmu, usq, self.params.dt, self.params.gamma)
        } else {
            0.0
        };
        self.h3_sum += h3_increment(&self.state.phi_m, self.params.dt);
        let (div_l2, div_inf) = divergence_residual(&self.state.u);
        self.max_div_u_l2 = self.max_div_u_l2.max(div_l2);

        let rec = DiagnosticsRecord {
            step: self.state.step,
            t: self.state.time,
            e_h: energy_eh(&self.state.phi_m, eps),
            f_h: fh,
            mass: mass(&self.state.phi_m),
            grad_mu_sq: gmu,
            u_sq: usq,
            dissipation_defect: defect,
            h3_sum: self.h3_sum,
            div_u_inf: div_inf,
            vcycles: cycles,
        };
        self.records.push(rec);
        Ok(self.records.last().unwrap())
    }
}

/// Outcome of a completed run.
pub struct RunSummary {
    pub steps: usize,
    pub records: Vec<DiagnosticsRecord>,
    pub final_state: TimeState,
    pub max_div_u_l2: f64,
    pub wall_secs: f64,
}

impl RunSummary {
    /// Mean V-cycles over the solver-backed steps (bootstrap included).
    pub fn mean_vcycles(&self) -> f64 {
        let solves: Vec<_> = self.records.iter().skip(1).map(|r| r.vcycles).collect();
        if solves.is_empty() {
            0.0
        } else {
            solves.iter().sum::<usize>() as f64 / solves.len() as f64
        }
    }
}

pub fn build_initial_field(cfg: &RunConfig) -> Result<CellField, RunError> {
    let spec = cfg.grid()?;
    Ok(match &cfg.init {
        InitialData::Benchmark => init_benchmark(spec),
        InitialData::Spinodal => init_spinodal(spec, cfg.phi_bar, cfg.noise_amp, cfg.rng_seed),
        InitialData::File(path) => {
            let (phi, _) = read_snapshot(path)?;
            phi
        }
    })
}

fn step_count(cfg: &RunConfig) -> usize {
    if cfg.t_final <= 0.0 {
        0
    } else {
        (cfg.t_final / cfg.dt()).round().max(1.0) as usize
    }
}

/// Run without touching the filesystem; used by the convergence driver and
/// tests.
pub fn run_headless(cfg: &RunConfig) -> Result<RunSummary, RunError> {
    cfg.validate()?;
    let start = Instant::now();
    let phi0 = build_initial_field(cfg)?;
    let mut sim = Simulation::new(&phi0, cfg.scheme_params()?, cfg.mg, cfg.bootstrap);
    let steps = step_count(cfg);
    for _ in 0..steps {
        sim.advance()?;
    }
    Ok(RunSummary {
        steps,
        records: sim.records,
        final_state: sim.state,
        max_div_u_l2: sim.max_div_u_l2,
        wall_secs: start.elapsed().as_secs_f64(),
    })
}

/// Run and persist `energy.csv` plus `phi_<step>.dat` snapshots under
/// `cfg.output_dir`. Snapshots are written at step 0, every `output_every`
/// steps (if nonzero), and at the final step.
pub fn run_simulation(cfg: &RunConfig) -> Result<RunSummary, RunError> {
    cfg.validate()?;
    let start = Instant::now();
    std::fs::create_dir_all(&cfg.output_dir).map_err(|source| {
        RunError::Io(IoError::Io {
            path: cfg.output_dir.clone(),
            source,
        })
    })?;
    let mut writer = TimeseriesWriter::create(&cfg.output_dir.join("energy.csv"))?;

    let phi0 = build_initial_field(cfg)?;
    let mut sim = Simulation::new(&phi0, cfg.scheme_params()?, cfg.mg, cfg.bootstrap);
    writer.write_record(sim.last_record())?;
    let steps = step_count(cfg);
    let snap_due = |step: usize| {
        step == 0 || step == steps || (cfg.output_every > 0 && step % cfg.output_every == 0)
    };
    if snap_due(0) {
        snapshot(&cfg.output_dir, &sim.state.phi_m, 0, 0.0)?;
    }

    for _ in 0..steps {
        // flush what we have even if the solver fails mid-run
        let res = sim.advance();
        match res {
            Ok(rec) => {
                writer.write_record(rec)?;
            }
            Err(e) => {
                writer.finish()?;
                return Err(e);
            }
        }
        let step = sim.state.step;
        if snap_due(step) {
            snapshot(&cfg.output_dir, &sim.state.phi_m, step, sim.state.time)?;
        }
    }
    writer.finish()?;
    Ok(RunSummary {
        steps,
        records: sim.records,
        final_state: sim.state,
        max_div_u_l2: sim.max_div_u_l2,
        wall_secs: start.elapsed().as_secs_f64(),
    })
}

fn snapshot(dir: &Path, phi: &CellField, step: usize, t: f64) -> Result<(), IoError> {
    write_snapshot(&dir.join(format!("phi_{step}.dat")), phi, t)
}
