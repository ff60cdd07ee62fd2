//! Discrete energies, mass, the per-step dissipation ledger, the H^3-type
//! stability accumulator, and velocity divergence residuals.
//!
//!   E_h(phi)      = 1/4 ||phi||_4^4 - 1/2 ||phi||_2^2 + eps^2/2 ||grad phi||_2^2
//!   F_h(phi, psi) = E_h(phi) + 1/4 ||phi - psi||_2^2 + eps^2/8 ||grad(phi - psi)||_2^2
//!
//! E_h is logged but never asserted monotone; only F_h carries the
//! dissipation inequality.

use crate::grid::{CellField, MacField};
use crate::operators::{
    divergence, grad_lap_sq, inner_cell, inner_grad, inner_mac, norm_inf, norm_p,
};

/// One row of the per-step time series.
#[derive(Debug, Clone, Copy)]
pub struct DiagnosticsRecord {
    pub step: usize,
    pub t: f64,
    pub e_h: f64,
    pub f_h: f64,
    pub mass: f64,
    /// ||grad_h mu^{m+1/2}||_2^2
    pub grad_mu_sq: f64,
    /// ||u^{m+1/2}||_2^2
    pub u_sq: f64,
    /// left side of the per-step dissipation inequality (0 where undefined)
    pub dissipation_defect: f64,
    /// running sum of s ||grad_h lap_h phi^m||_2^2
    pub h3_sum: f64,
    /// ||div_h u||_inf
    pub div_u_inf: f64,
    pub vcycles: usize,
}

/// E_h(phi); phi must be ghosted.
pub fn energy_eh(phi: &CellField, epsilon: f64) -> f64 {
    let l4 = norm_p(phi, 4);
    let l2 = norm_p(phi, 2);
    let grad_sq = inner_grad(phi, phi);
    0.25 * l4.powi(4) - 0.5 * l2.powi(2) + 0.5 * epsilon * epsilon * grad_sq
}

/// F_h(phi, psi) = E_h(phi) + history-difference penalties.
pub fn energy_fh(phi: &CellField, psi: &CellField, epsilon: f64) -> f64 {
    let spec = phi.spec();
    assert_eq!(spec, psi.spec(), "energy_fh: grid mismatch");
    let mut diff = CellField::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            diff.set(i, j, phi.at(i, j) - psi.at(i, j));
        }
    }
    diff.fill_ghosts_neumann();
    let l2 = norm_p(&diff, 2);
    let grad_sq = inner_grad(&diff, &diff);
    energy_eh(phi, epsilon) + 0.25 * l2.powi(2) + 0.125 * epsilon * epsilon * grad_sq
}

/// (phi, 1) = h^2 sum of interior values.
pub fn mass(phi: &CellField) -> f64 {
    let spec = phi.spec();
    let one = CellField::constant(spec, 1.0);
    inner_cell(phi, &one)
}

/// Left-hand side of the per-step dissipation inequality
///
///   F_h(phi^{m+1}, phi^m) - F_h(phi^m, phi^{m-1})
///     + s ||grad mu||_2^2 + (s/gamma) ||u||_2^2  <= 0.
///
/// For gamma = 0 the velocity term is omitted (the flow decouples).
pub fn dissipation_defect(
    fh_new: f64,
    fh_prev: f64,
    grad_mu_sq: f64,
    u_sq: f64,
    dt: f64,
    gamma: f64,
) -> f64 {
    let mut d = fh_new - fh_prev + dt * grad_mu_sq;
    if gamma > 0.0 {
        d += dt / gamma * u_sq;
    }
    d
}

/// s ||grad_h lap_h phi||_2^2, one term of the H^3 stability sum.
pub fn h3_increment(phi: &CellField, dt: f64) -> f64 {
    dt * grad_lap_sq(phi)
}

/// (l2, l_inf) norms of div_h u.
pub fn divergence_residual(u: &MacField) -> (f64, f64) {
    let d = divergence(u);
    (norm_p(&d, 2), norm_inf(&d))
}

/// ||grad_h mu||_2^2 for the ledger.
pub fn grad_mu_sq(mu: &CellField) -> f64 {
    inner_grad(mu, mu)
}

/// ||u||_2^2 under the MAC inner product.
pub fn velocity_sq(u: &MacField) -> f64 {
    inner_mac(u, u)
}
