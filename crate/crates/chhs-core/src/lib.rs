//! Solver library for the Cahn-Hilliard-Hele-Shaw equations.
//!
//! Implements a second-order-in-time, unconditionally energy-stable
//! convex-splitting finite-difference scheme on a 2D MAC grid with homogeneous
//! Neumann boundaries, solved at each step by FAS nonlinear multigrid, plus
//! the diagnostics (discrete energies, mass, dissipation ledger) and
//! experiment drivers (Cauchy convergence study, spinodal decomposition) that
//! exercise it.

pub mod config;
pub mod convergence;
pub mod diagnostics;
pub mod fas;
pub mod grid;
pub mod init;
pub mod io;
pub mod operators;
pub mod run;
pub mod scheme;

pub use config::{parse_config, Bootstrap, ConfigError, InitialData, RunConfig, TimeStep};
pub use convergence::{cauchy_convergence, ConvergenceRow, Interp};
pub use diagnostics::DiagnosticsRecord;
pub use fas::{MgConfig, MgHierarchy, SolveError, SolveReport};
pub use grid::{CellField, GridError, GridSpec, MacField};
pub use run::{run_headless, run_simulation, RunError, RunSummary, Simulation};
pub use scheme::{FieldTriple, FrozenCoefficients, SchemeParams, SystemOp, TimeState};
