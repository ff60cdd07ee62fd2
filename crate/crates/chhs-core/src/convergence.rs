//! Cauchy-type convergence study on the linear refinement path s = c*h.
//!
//! Consecutive resolutions are run to the same final time; the Cauchy
//! difference delta = phi_{h_f} - I(phi_{h_c}) is measured in the fine-grid
//! l2 norm and successive pairs give the observed rate
//! log2(||delta||_coarser_pair / ||delta||_finer_pair).

use crate::config::{RunConfig, TimeStep};
use crate::grid::{CellField, GridSpec};
use crate::operators::norm_p;
use crate::run::{run_headless, RunError};

/// Coarse-to-fine interpolation used for the Cauchy difference.
///
/// Nearest injection carries an O(h) error of its own that swamps the O(h^2)
/// scheme difference (measured rates collapse to ~1), so bilinear is the
/// default; nearest stays selectable for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interp {
    /// Piecewise-constant (nearest) injection.
    Nearest,
    /// Cell-centered bilinear interpolation with mirrored ghost closure.
    #[default]
    Bilinear,
}

/// One rung of the refinement table.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub h_coarse: f64,
    pub h_fine: f64,
    pub error_l2: f64,
    pub rate: Option<f64>,
    /// mean V-cycles per time step of the fine run
    pub mean_vcycles: f64,
    /// wall-clock seconds per time step of the fine run
    pub secs_per_step: f64,
}

/// Map a coarse field onto the once-refined grid.
pub fn interpolate_to_fine(coarse: &CellField, interp: Interp) -> CellField {
    match interp {
        Interp::Nearest => crate::fas::prolong_cell(coarse),
        Interp::Bilinear => {
            let cs = coarse.spec();
            let fs = GridSpec {
                lx: cs.lx,
                ly: cs.ly,
                nx: cs.nx * 2,
                ny: cs.ny * 2,
                h: 0.5 * cs.h,
            };
            let mut out = CellField::zeros(fs);
            for j in 1..=fs.ny {
                for i in 1..=fs.nx {
                    let (ic, jc) = ((i + 1) / 2, (j + 1) / 2);
                    let ia = if i % 2 == 1 { ic - 1 } else { ic + 1 };
                    let ja = if j % 2 == 1 { jc - 1 } else { jc + 1 };
                    out.set(
                        i,
                        j,
                        0.5625 * coarse.at(ic, jc)
                            + 0.1875 * (coarse.at(ia, jc) + coarse.at(ic, ja))
                            + 0.0625 * coarse.at(ia, ja),
                    );
                }
            }
            out.fill_ghosts_neumann();
            out
        }
    }
}

/// l2 norm of the Cauchy difference between a fine solution and the
/// interpolated coarse one.
pub fn cauchy_difference(fine: &CellField, coarse: &CellField, interp: Interp) -> f64 {
    let lifted = interpolate_to_fine(coarse, interp);
    let fs = fine.spec();
    assert_eq!(
        fs,
        lifted.spec(),
        "cauchy_difference: grids are not a 2:1 pair"
    );
    let mut delta = CellField::zeros(fs);
    for j in 1..=fs.ny {
        for i in 1..=fs.nx {
            delta.set(i, j, fine.at(i, j) - lifted.at(i, j));
        }
    }
    norm_p(&delta, 2)
}

/// Run `levels + 1` resolutions starting at `base.nx` (doubling each time) and
/// tabulate the Cauchy errors and rates over the `levels` consecutive pairs.
pub fn cauchy_convergence(
    base: &RunConfig,
    levels: usize,
    interp: Interp,
) -> Result<Vec<ConvergenceRow>, RunError> {
    let TimeStep::RatioOfH(_) = base.time_step else {
        return Err(RunError::NeedsDtRatio);
    };
    assert!(
        levels >= 1,
        "cauchy_convergence: need at least one grid pair"
    );

    struct LevelRun {
        h: f64,
        phi: CellField,
        mean_vcycles: f64,
        secs_per_step: f64,
    }

    let mut runs: Vec<LevelRun> = Vec::new();
    for k in 0..=levels {
        let mut cfg = base.clone();
        cfg.nx = base.nx << k;
        cfg.ny = base.ny << k;
        let summary = run_headless(&cfg)?;
        runs.push(LevelRun {
            h: cfg.lx / cfg.nx as f64,
            phi: summary.final_state.phi_m.clone(),
            mean_vcycles: summary.mean_vcycles(),
            secs_per_step: summary.wall_secs / summary.steps.max(1) as f64,
        });
    }

    let mut rows = Vec::new();
    let mut prev_err: Option<f64> = None;
    for pair in runs.windows(2) {
        let err = cauchy_difference(&pair[1].phi, &pair[0].phi, interp);
        let rate = prev_err.map(|p| (p / err).log2());
        rows.push(ConvergenceRow {
            h_coarse: pair[0].h,
            h_fine: pair[1].h,
            error_l2: err,
            rate,
            mean_vcycles: pair[1].mean_vcycles,
            secs_per_step: pair[1].secs_per_step,
        });
        prev_err = Some(err);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::project_function;

    #[test]
    fn identical_fields_give_zero_difference() {
        let cs = GridSpec::square(3.2, 16).unwrap();
        let coarse = project_function(|x, y| (x - y) * 0.25, cs);
        let fine = interpolate_to_fine(&coarse, Interp::Nearest);
        assert_eq!(cauchy_difference(&fine, &coarse, Interp::Nearest), 0.0);
    }

    #[test]
    fn bilinear_is_exact_for_linear_fields() {
        // away from the mirrored boundary closure, bilinear interpolation
        // reproduces linear profiles at the fine centers
        let cs = GridSpec::square(8.0, 8).unwrap();
        let coarse = project_function(|x, _| 3.0 * x, cs);
        let fine = interpolate_to_fine(&coarse, Interp::Bilinear);
        let fs = fine.spec();
        for j in 3..=fs.ny - 2 {
            for i in 3..=fs.nx - 2 {
                let (x, _) = fs.cell_center(i, j);
                assert!((fine.at(i, j) - 3.0 * x).abs() < 1e-12, "at ({i},{j})");
            }
        }
    }

    #[test]
    fn study_requires_ratio_time_step() {
        let mut cfg = RunConfig::benchmark();
        cfg.time_step = TimeStep::Fixed(0.01);
        assert!(matches!(
            cauchy_convergence(&cfg, 1, Interp::Nearest),
            Err(RunError::NeedsDtRatio)
        ));
    }
}
