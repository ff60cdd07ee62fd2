//! `chhs`: command-line driver for the Cahn-Hilliard-Hele-Shaw solver.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 solver
//! non-convergence.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chhs_core::config::{parse_config, RunConfig};
use chhs_core::convergence::{cauchy_convergence, ConvergenceRow, Interp};
use chhs_core::run::{run_simulation, RunError};

#[derive(Parser)]
#[command(name = "chhs", version, about = "Cahn-Hilliard-Hele-Shaw simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation from a config file.
    Run(RunArgs),
    /// Cauchy convergence study over a ladder of refined grids.
    Converge(ConvergeArgs),
    /// Spinodal decomposition run with an overridden surface-tension gamma.
    Spinodal(SpinodalArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the run configuration.
    config: PathBuf,
    /// Override the configured output directory.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Suppress the per-run summary.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Path to the run configuration (must use dt_ratio).
    config: PathBuf,
    /// Number of consecutive grid pairs; runs levels+1 resolutions starting
    /// at the configured nx.
    #[arg(long)]
    levels: usize,
    /// Coarse-to-fine interpolation for the Cauchy difference.
    #[arg(long, value_enum, default_value_t = InterpArg::Bilinear)]
    interp: InterpArg,
}

#[derive(Args)]
struct SpinodalArgs {
    /// Path to the run configuration.
    config: PathBuf,
    /// Surface-tension/flow coupling to use for this run.
    #[arg(long)]
    gamma: f64,
    /// Override the configured output directory.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Suppress the per-run summary.
    #[arg(long)]
    quiet: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum InterpArg {
    Nearest,
    Bilinear,
}

impl From<InterpArg> for Interp {
    fn from(v: InterpArg) -> Self {
        match v {
            InterpArg::Nearest => Interp::Nearest,
            InterpArg::Bilinear => Interp::Bilinear,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Converge(args) => cmd_converge(args),
        Command::Spinodal(args) => cmd_spinodal(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut src = std::error::Error::source(&e);
            while let Some(s) = src {
                eprintln!("  caused by: {s}");
                src = s.source();
            }
            match e {
                RunError::Solver { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn load(path: &Path) -> Result<RunConfig, RunError> {
    Ok(parse_config(path)?)
}

fn cmd_run(args: RunArgs) -> Result<(), RunError> {
    let mut cfg = load(&args.config)?;
    if let Some(dir) = args.output_dir {
        cfg.output_dir = dir;
    }
    let summary = run_simulation(&cfg)?;
    if !args.quiet {
        print_summary(&cfg, &summary);
    }
    Ok(())
}

fn cmd_spinodal(args: SpinodalArgs) -> Result<(), RunError> {
    let mut cfg = load(&args.config)?;
    cfg.gamma = args.gamma;
    if let Some(dir) = args.output_dir {
        cfg.output_dir = dir;
    }
    let summary = run_simulation(&cfg)?;
    if !args.quiet {
        print_summary(&cfg, &summary);
    }
    Ok(())
}

fn cmd_converge(args: ConvergeArgs) -> Result<(), RunError> {
    let cfg = load(&args.config)?;
    let rows = cauchy_convergence(&cfg, args.levels, args.interp.into())?;
    print_table(&cfg, &rows);
    Ok(())
}

fn print_summary(cfg: &RunConfig, summary: &chhs_core::run::RunSummary) {
    let last = summary.records.last().unwrap();
    let first = &summary.records[0];
    println!(
        "{} steps to t = {:.6} on {}x{} (h = {:.6}, dt = {:.6})",
        summary.steps,
        last.t,
        cfg.nx,
        cfg.ny,
        cfg.lx / cfg.nx as f64,
        cfg.dt()
    );
    println!(
        "  E_h {:.6e} -> {:.6e}   F_h -> {:.6e}",
        first.e_h, last.e_h, last.f_h
    );
    println!(
        "  mass {:.12e} (drift {:.3e})   mean V-cycles {:.2}   wall {:.2}s",
        last.mass,
        (last.mass - first.mass).abs(),
        summary.mean_vcycles(),
        summary.wall_secs
    );
    println!("  outputs in {}", cfg.output_dir.display());
}

fn print_table(cfg: &RunConfig, rows: &[ConvergenceRow]) {
    println!(
        "{:>12} {:>12} {:>16} {:>8} {:>7} {:>10}",
        "h_c", "h_f", "||delta_phi||_2", "rate", "#V's", "s/step"
    );
    for r in rows {
        let hc = format!("{}/{}", cfg.lx, (cfg.lx / r.h_coarse).round() as usize);
        let hf = format!("{}/{}", cfg.lx, (cfg.lx / r.h_fine).round() as usize);
        let rate = r
            .rate
            .map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
        println!(
            "{hc:>12} {hf:>12} {:>16.4e} {rate:>8} {:>7.2} {:>10.4}",
            r.error_l2, r.mean_vcycles, r.secs_per_step
        );
    }
}
