//! Full Approximation Scheme nonlinear multigrid for the per-step coupled
//! (phi, mu, p) system.
//!
//! The smoother is a coupled pointwise red-black Newton-Gauss-Seidel: at each
//! cell the local 3x3 linearization in (phi_ij, mu_ij, p_ij) is solved with
//! neighbors held fixed, one Newton linearization of the quartic term per
//! visit. Transfers are cell-centered: restriction averages each 2x2 block,
//! prolongation injects the coarse value into its block. Coarse operators are
//! rediscretizations (the frozen coefficient fields are restricted once per
//! solve). The pressure is defined up to a constant; its mean is pinned to
//! zero after every sweep and at convergence.
//!
//! The stopping norm is the composite max over the three equations of the
//! discrete l2 residual norm scaled by |Omega|^{1/2}, i.e. a plain RMS, so a
//! given tolerance means the same thing on every grid size.

use thiserror::Error;

use crate::grid::{CellField, GridSpec, MacField};
use crate::scheme::{FieldTriple, SystemOp};

/// Multigrid parameters; the defaults are the ones the experiments use
/// (two pre- and post-smoothing sweeps, 2x2 coarsest grid, tol 1e-10).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MgConfig {
    pub nu1: usize,
    pub nu2: usize,
    pub coarsest: usize,
    pub tol: f64,
    pub max_cycles: usize,
}

impl Default for MgConfig {
    fn default() -> Self {
        Self {
            nu1: 2,
            nu2: 2,
            coarsest: 2,
            tol: 1e-10,
            max_cycles: 50,
        }
    }
}

/// Sweeps spent on the coarsest level per visit; a handful of cells, so this
/// solves it to round-off.
const COARSE_SWEEPS: usize = 20;

#[derive(Debug, Clone, Copy)]
pub struct SolveReport {
    pub cycles: usize,
    pub residual: f64,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(
        "grid {nx}x{ny} cannot be coarsened by factors of 2 down to the \
         {coarsest}x{coarsest} multigrid base (cell counts must be the coarsest \
         size times a power of two)"
    )]
    InvalidHierarchy {
        nx: usize,
        ny: usize,
        coarsest: usize,
    },
    #[error("multigrid did not converge after {cycles} V-cycles: residual {residual:.3e} > tol {tol:.3e}")]
    NonConvergence {
        cycles: usize,
        residual: f64,
        tol: f64,
    },
}

/// Restriction: average each 2x2 fine block onto the coarse cell.
pub fn restrict_cell(fine: &CellField) -> CellField {
    let fs = fine.spec();
    assert!(
        fs.nx % 2 == 0 && fs.ny % 2 == 0,
        "restrict_cell: dimensions {}x{} not divisible by 2",
        fs.nx,
        fs.ny
    );
    let cs = GridSpec {
        lx: fs.lx,
        ly: fs.ly,
        nx: fs.nx / 2,
        ny: fs.ny / 2,
        h: 2.0 * fs.h,
    };
    let mut out = CellField::zeros(cs);
    for j in 1..=cs.ny {
        for i in 1..=cs.nx {
            let v = 0.25
                * (fine.at(2 * i - 1, 2 * j - 1)
                    + fine.at(2 * i, 2 * j - 1)
                    + fine.at(2 * i - 1, 2 * j)
                    + fine.at(2 * i, 2 * j));
            out.set(i, j, v);
        }
    }
    out.fill_ghosts_neumann();
    out
}

/// Prolongation: piecewise-constant injection of each coarse cell into its
/// 2x2 fine block.
pub fn prolong_cell(coarse: &CellField) -> CellField {
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
            out.set(i, j, coarse.at((i + 1) / 2, (j + 1) / 2));
        }
    }
    out.fill_ghosts_neumann();
    out
}

/// Subtract the interior mean so (p, 1) = 0.
pub fn pin_mean_zero(p: &mut CellField) {
    let s = p.spec();
    let mut acc = 0.0;
    for j in 1..=s.ny {
        for i in 1..=s.nx {
            acc += p.at(i, j);
        }
    }
    let mean = acc / s.n_cells() as f64;
    for j in 1..=s.ny {
        for i in 1..=s.nx {
            *p.at_mut(i, j) -= mean;
        }
    }
}

/// `sweeps` red-black coupled Newton-Gauss-Seidel sweeps on N(v) = b.
///
/// Cells are visited row-major, first those with even (i + j), then odd. At
/// each cell the exact local Jacobian of the three equations with respect to
/// (phi_ij, mu_ij, p_ij) is solved directly; its sparsity (the mu equation
/// does not see p, the p equation does not see phi) gives the closed form
/// below. The mean of p is re-pinned after every full sweep.
pub fn smooth(op: &SystemOp, b: &FieldTriple, v: &mut FieldTriple, sweeps: usize) {
    let s = op.spec;
    let hh = s.h * s.h;
    for _ in 0..sweeps {
        for color in 0..2usize {
            for j in 1..=s.ny {
                for i in 1..=s.nx {
                    if (i + j) % 2 != color {
                        continue;
                    }
                    let (n_phi, n_mu, n_p) = op.eval_cell(v, i, j);
                    let d1 = b.phi.at(i, j) - n_phi;
                    let d2 = b.mu.at(i, j) - n_mu;
                    let d3 = b.p.at(i, j) - n_p;

                    let (me, mw, mn, ms) = op.mobility_around(i, j);
                    let (ae, aw, an, aso) = op.a_face_around(i, j);
                    let sm = me + mw + mn + ms;
                    let sa = ae + aw + an + aso;
                    let n_open = op.open_faces(i, j);

                    let chip = op.nonlinear_prime(v.phi.at(i, j), i, j);
                    let j12 = op.s * sm / hh;
                    let j13 = op.s * sa / hh;
                    let j21 = -(chip + op.lap_coeff * (n_open / hh));
                    let j32 = -(op.gamma * sa / hh);
                    let j33 = -(n_open / hh);

                    let dmu =
                        (d1 - d2 / j21 - j13 * d3 / j33) / (j12 - 1.0 / j21 - j13 * j32 / j33);
                    let dphi = (d2 - dmu) / j21;
                    let dp = (d3 - j32 * dmu) / j33;

                    *v.phi.at_mut(i, j) += dphi;
                    *v.mu.at_mut(i, j) += dmu;
                    *v.p.at_mut(i, j) += dp;
                }
            }
        }
        pin_mean_zero(&mut v.p);
    }
}

#[derive(Debug)]
struct Level {
    op: SystemOp,
    v: FieldTriple,
    b: FieldTriple,
    n: FieldTriple,
    keep: FieldTriple,
    flux: MacField,
}

impl Level {
    fn new(op: SystemOp) -> Self {
        let spec = op.spec;
        Self {
            op,
            v: FieldTriple::zeros(spec),
            b: FieldTriple::zeros(spec),
            n: FieldTriple::zeros(spec),
            keep: FieldTriple::zeros(spec),
            flux: MacField::zeros(spec),
        }
    }
}

/// The multigrid hierarchy for one time step's nonlinear system.
#[derive(Debug)]
pub struct MgHierarchy {
    levels: Vec<Level>,
    cfg: MgConfig,
}

impl MgHierarchy {
    /// Build levels down to the configured coarsest size by rediscretizing the
    /// frozen operator. Fails if the cell counts cannot halve their way there.
    pub fn build(op: SystemOp, cfg: MgConfig) -> Result<Self, SolveError> {
        let (nx0, ny0) = (op.spec.nx, op.spec.ny);
        let mut levels = vec![Level::new(op)];
        loop {
            let s = levels.last().unwrap().op.spec;
            if s.nx.min(s.ny) <= cfg.coarsest {
                break;
            }
            if s.nx % 2 != 0 || s.ny % 2 != 0 {
                return Err(SolveError::InvalidHierarchy {
                    nx: nx0,
                    ny: ny0,
                    coarsest: cfg.coarsest,
                });
            }
            let coarse_op = levels.last().unwrap().op.coarsen();
            levels.push(Level::new(coarse_op));
        }
        let last = levels.last().unwrap().op.spec;
        if last.nx.min(last.ny) != cfg.coarsest && levels.len() > 1 {
            return Err(SolveError::InvalidHierarchy {
                nx: nx0,
                ny: ny0,
                coarsest: cfg.coarsest,
            });
        }
        Ok(Self { levels, cfg })
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Composite RMS residual max(rms(r_phi), rms(r_mu), rms(r_p)) on the
    /// finest level.
    pub fn finest_residual_norm(&mut self) -> f64 {
        let lvl = &mut self.levels[0];
        lvl.op.eval_into(&lvl.v, &mut lvl.flux, &mut lvl.n);
        let s = lvl.op.spec;
        let mut acc = [0.0f64; 3];
        for j in 1..=s.ny {
            for i in 1..=s.nx {
                let r0 = lvl.b.phi.at(i, j) - lvl.n.phi.at(i, j);
                let r1 = lvl.b.mu.at(i, j) - lvl.n.mu.at(i, j);
                let r2 = lvl.b.p.at(i, j) - lvl.n.p.at(i, j);
                acc[0] += r0 * r0;
                acc[1] += r1 * r1;
                acc[2] += r2 * r2;
            }
        }
        let n = s.n_cells() as f64;
        acc.iter().map(|a| (a / n).sqrt()).fold(0.0, f64::max)
    }

    /// Load unknowns and right-hand side onto the finest level.
    pub fn set_finest(&mut self, rhs: FieldTriple, guess: FieldTriple) {
        let lvl = &mut self.levels[0];
        lvl.b = rhs;
        lvl.v = guess;
        pin_mean_zero(&mut lvl.v.p);
    }

    /// One V(nu1, nu2) cycle on the current finest unknowns.
    pub fn v_cycle(&mut self) {
        v_cycle_rec(&mut self.levels, &self.cfg);
    }

    /// Current finest unknowns (pressure mean-pinned).
    pub fn finest(&self) -> &FieldTriple {
        &self.levels[0].v
    }

    /// Outer iteration: V-cycles until the composite residual drops below
    /// `tol`, starting from `guess`.
    pub fn solve(
        &mut self,
        rhs: FieldTriple,
        guess: FieldTriple,
    ) -> Result<(FieldTriple, SolveReport), SolveError> {
        self.set_finest(rhs, guess);
        let mut cycles = 0;
        loop {
            let residual = self.finest_residual_norm();
            if residual <= self.cfg.tol {
                return Ok((self.levels[0].v.clone(), SolveReport { cycles, residual }));
            }
            if cycles >= self.cfg.max_cycles {
                return Err(SolveError::NonConvergence {
                    cycles,
                    residual,
                    tol: self.cfg.tol,
                });
            }
            self.v_cycle();
            cycles += 1;
        }
    }
}

fn v_cycle_rec(levels: &mut [Level], cfg: &MgConfig) {
    if levels.len() == 1 {
        let lvl = &mut levels[0];
        smooth(&lvl.op, &lvl.b, &mut lvl.v, COARSE_SWEEPS);
        return;
    }

    let (head, tail) = levels.split_at_mut(1);
    let fine = &mut head[0];
    let spec = fine.op.spec;

    smooth(&fine.op, &fine.b, &mut fine.v, cfg.nu1);

    // FAS transfer: restrict both the residual and the current solution, and
    // form the coarse right-hand side b_c = R(b - N(v)) + N_c(R v).
    fine.op.eval_into(&fine.v, &mut fine.flux, &mut fine.n);
    let mut r = FieldTriple::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            r.phi.set(i, j, fine.b.phi.at(i, j) - fine.n.phi.at(i, j));
            r.mu.set(i, j, fine.b.mu.at(i, j) - fine.n.mu.at(i, j));
            r.p.set(i, j, fine.b.p.at(i, j) - fine.n.p.at(i, j));
        }
    }

    {
        let coarse = &mut tail[0];
        coarse.v.phi = restrict_cell(&fine.v.phi);
        coarse.v.mu = restrict_cell(&fine.v.mu);
        coarse.v.p = restrict_cell(&fine.v.p);
        coarse.keep = coarse.v.clone();

        coarse
            .op
            .eval_into(&coarse.v, &mut coarse.flux, &mut coarse.n);
        let rc_phi = restrict_cell(&r.phi);
        let rc_mu = restrict_cell(&r.mu);
        let rc_p = restrict_cell(&r.p);
        let cs = coarse.op.spec;
        for j in 1..=cs.ny {
            for i in 1..=cs.nx {
                coarse
                    .b
                    .phi
                    .set(i, j, rc_phi.at(i, j) + coarse.n.phi.at(i, j));
                coarse.b.mu.set(i, j, rc_mu.at(i, j) + coarse.n.mu.at(i, j));
                coarse.b.p.set(i, j, rc_p.at(i, j) + coarse.n.p.at(i, j));
            }
        }
    }

    v_cycle_rec(tail, cfg);

    // Coarse-grid correction by injected increments.
    {
        let coarse = &tail[0];
        for j in 1..=spec.ny {
            for i in 1..=spec.nx {
                let (ic, jc) = ((i + 1) / 2, (j + 1) / 2);
                *fine.v.phi.at_mut(i, j) += coarse.v.phi.at(ic, jc) - coarse.keep.phi.at(ic, jc);
                *fine.v.mu.at_mut(i, j) += coarse.v.mu.at(ic, jc) - coarse.keep.mu.at(ic, jc);
                *fine.v.p.at_mut(i, j) += coarse.v.p.at(ic, jc) - coarse.keep.p.at(ic, jc);
            }
        }
    }

    smooth(&fine.op, &fine.b, &mut fine.v, cfg.nu2);
    pin_mean_zero(&mut fine.v.p);
}
