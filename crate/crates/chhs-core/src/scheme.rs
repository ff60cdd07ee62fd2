//! The second-order convex-splitting scheme for the Cahn-Hilliard-Hele-Shaw
//! system, written in the velocity-eliminated three-field form
//!
//!   phi^{m+1} - phi^m = s div_h( M(A_h phi*) grad_h mu ) + s div_h( A_h phi* grad_h p ),
//!   mu  = chi(phi^{m+1}, phi^m) - phi* - eps^2 lap_h( 3/4 phi^{m+1} + 1/4 phi^{m-1} ),
//!   lap_h p = -gamma div_h( A_h phi* grad_h mu ),
//!
//! with phi* the Adams-Bashforth extrapolation, chi the secant-type quartic
//! term, and M(a) = 1 + gamma a^2 the mobility after eliminating the Darcy
//! velocity. The velocity is reconstructed afterwards from
//! u = -grad_h p - gamma A_h phi* grad_h mu.
//!
//! `SystemOp` freezes the coefficient fields of one time step's nonlinear
//! system N(v) = b and provides the canonical residual evaluation used by the
//! multigrid solver, pointwise smoother, and diagnostics. Every flux is formed
//! face-by-face (coefficient times one-sided difference) and then divergenced,
//! so boundary fluxes are exactly zero and the scheme conserves mass in exact
//! arithmetic.

use thiserror::Error;

use crate::fas::{MgConfig, MgHierarchy, SolveError, SolveReport};
use crate::grid::{CellField, GridSpec, MacField};
use crate::operators::{face_average, gradient, laplacian};

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("interface width epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("time step must be positive, got {0}")]
    NonPositiveDt(f64),
    #[error("gamma must be nonnegative, got {0}")]
    NegativeGamma(f64),
}

/// Physical and temporal parameters of the scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    pub epsilon: f64,
    pub gamma: f64,
    pub dt: f64,
}

impl SchemeParams {
    pub fn new(epsilon: f64, gamma: f64, dt: f64) -> Result<Self, ParamError> {
        if !(epsilon > 0.0) {
            return Err(ParamError::NonPositiveEpsilon(epsilon));
        }
        if !(dt > 0.0) {
            return Err(ParamError::NonPositiveDt(dt));
        }
        if !(gamma >= 0.0) {
            return Err(ParamError::NegativeGamma(gamma));
        }
        Ok(Self { epsilon, gamma, dt })
    }
}

/// Two-level time history plus the last solved (mu, p, u).
///
/// `mu_prev` and `p_prev` hold the half-step values one solve older than
/// `mu` and `p`; the stepper extrapolates the pairs for the next solve's
/// initial guess.
#[derive(Debug, Clone)]
pub struct TimeState {
    pub phi_m: CellField,
    pub phi_mm1: CellField,
    pub mu: CellField,
    pub p: CellField,
    pub mu_prev: CellField,
    pub p_prev: CellField,
    pub u: MacField,
    pub step: usize,
    pub time: f64,
}

impl TimeState {
    /// State at t = 0. `mu` is initialized from the chemical potential of
    /// `phi0` so the first solve starts from a consistent guess; both history
    /// levels hold `phi0` until the bootstrap replaces the older one.
    pub fn initial(phi0: &CellField, params: &SchemeParams) -> Self {
        let spec = phi0.spec();
        let mut phi = phi0.clone();
        phi.fill_ghosts_neumann();
        let mu = chemical_potential(&phi, params.epsilon);
        Self {
            phi_mm1: phi.clone(),
            phi_m: phi,
            mu_prev: mu.clone(),
            mu,
            p_prev: CellField::zeros(spec),
            p: CellField::zeros(spec),
            u: MacField::zeros(spec),
            step: 0,
            time: 0.0,
        }
    }

    /// Second-order predictor for the next solve: 2 v^k - v^{k-1} on each of
    /// (phi, mu, p). Cuts the starting residual from O(s) to O(s^2), which is
    /// what keeps the per-step V-cycle counts at the handful the experiments
    /// report.
    fn predicted_guess(&self) -> FieldTriple {
        let spec = self.phi_m.spec();
        let mut g = FieldTriple {
            phi: self.phi_m.clone(),
            mu: self.mu.clone(),
            p: self.p.clone(),
        };
        for j in 1..=spec.ny {
            for i in 1..=spec.nx {
                g.phi
                    .set(i, j, 2.0 * self.phi_m.at(i, j) - self.phi_mm1.at(i, j));
                g.mu.set(i, j, 2.0 * self.mu.at(i, j) - self.mu_prev.at(i, j));
                g.p.set(i, j, 2.0 * self.p.at(i, j) - self.p_prev.at(i, j));
            }
        }
        g
    }
}

/// mu = phi^3 - phi - eps^2 lap_h phi, ghost-filled.
pub fn chemical_potential(phi: &CellField, epsilon: f64) -> CellField {
    let spec = phi.spec();
    let lap = laplacian(phi);
    let mut mu = CellField::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            let v = phi.at(i, j);
            mu.set(i, j, v * v * v - v - epsilon * epsilon * lap.at(i, j));
        }
    }
    mu.fill_ghosts_neumann();
    mu
}

/// chi(a, b) = 1/4 (a^2 + b^2)(a + b), pointwise.
pub fn chi(a: &CellField, b: &CellField) -> CellField {
    let spec = a.spec();
    assert_eq!(spec, b.spec(), "chi: grid mismatch");
    let mut out = CellField::zeros(spec);
    for j in 0..=spec.ny + 1 {
        for i in 0..=spec.nx + 1 {
            out.set(i, j, chi_scalar(a.at(i, j), b.at(i, j)));
        }
    }
    out
}

#[inline]
pub(crate) fn chi_scalar(a: f64, b: f64) -> f64 {
    0.25 * (a * a + b * b) * (a + b)
}

/// d chi(a, b) / da = 1/4 (3 a^2 + 2 a b + b^2).
#[inline]
pub(crate) fn chi_prime_scalar(a: f64, b: f64) -> f64 {
    0.25 * (3.0 * a * a + 2.0 * a * b + b * b)
}

/// phi* = 3/2 phi^m - 1/2 phi^{m-1}. Ghosts of the inputs carry through, so
/// the result is Neumann-consistent without a refill.
pub fn extrapolate_star(phi_m: &CellField, phi_mm1: &CellField) -> CellField {
    let spec = phi_m.spec();
    assert_eq!(spec, phi_mm1.spec(), "extrapolate_star: grid mismatch");
    let mut out = CellField::zeros(spec);
    for j in 0..=spec.ny + 1 {
        for i in 0..=spec.nx + 1 {
            out.set(i, j, 1.5 * phi_m.at(i, j) - 0.5 * phi_mm1.at(i, j));
        }
    }
    out
}

/// Coefficient fields frozen at the start of a time step.
#[derive(Debug, Clone)]
pub struct FrozenCoefficients {
    pub phi_star: CellField,
    pub a_phi_star: MacField,
    pub mobility: MacField,
}

impl FrozenCoefficients {
    pub fn build(phi_m: &CellField, phi_mm1: &CellField, gamma: f64) -> Self {
        let phi_star = extrapolate_star(phi_m, phi_mm1);
        Self::from_phi_star(phi_star, gamma)
    }

    /// Freeze coefficients at an arbitrary (ghosted) field; the bootstrap
    /// freezes them at phi^0.
    pub fn from_phi_star(phi_star: CellField, gamma: f64) -> Self {
        let a_phi_star = face_average(&phi_star);
        let spec = phi_star.spec();
        let mut mobility = MacField::zeros(spec);
        for j in 1..=spec.ny {
            for i in 0..=spec.nx {
                let a = a_phi_star.fx(i, j);
                mobility.set_fx(i, j, 1.0 + gamma * a * a);
            }
        }
        for j in 0..=spec.ny {
            for i in 1..=spec.nx {
                let a = a_phi_star.fy(i, j);
                mobility.set_fy(i, j, 1.0 + gamma * a * a);
            }
        }
        Self {
            phi_star,
            a_phi_star,
            mobility,
        }
    }
}

/// Unknown or right-hand-side triple (phi, mu, p) of the per-step system.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTriple {
    pub phi: CellField,
    pub mu: CellField,
    pub p: CellField,
}

impl FieldTriple {
    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            phi: CellField::zeros(spec),
            mu: CellField::zeros(spec),
            p: CellField::zeros(spec),
        }
    }
}

/// One time step's frozen nonlinear system N(v) = b on a single grid level.
///
/// The implicit nonlinearity is chi(phi, phi^m) for the second-order scheme
/// (with phi^m frozen in `chi_data`) and phi^3 for the first-order bootstrap
/// (`chi_data = None`); `lap_coeff` is 3/4 eps^2 or eps^2 accordingly.
#[derive(Debug, Clone)]
pub struct SystemOp {
    pub spec: GridSpec,
    pub phi_star: CellField,
    pub a_face: MacField,
    pub mobility: MacField,
    pub chi_data: Option<CellField>,
    pub lap_coeff: f64,
    pub gamma: f64,
    pub s: f64,
}

impl SystemOp {
    /// The second-order operator for one step, frozen at (phi^m, phi^{m-1}).
    pub fn second_order(
        coeffs: &FrozenCoefficients,
        phi_m: &CellField,
        params: &SchemeParams,
    ) -> Self {
        Self {
            spec: phi_m.spec(),
            phi_star: coeffs.phi_star.clone(),
            a_face: coeffs.a_phi_star.clone(),
            mobility: coeffs.mobility.clone(),
            chi_data: Some(phi_m.clone()),
            lap_coeff: 0.75 * params.epsilon * params.epsilon,
            gamma: params.gamma,
            s: params.dt,
        }
    }

    /// The first-order bootstrap operator, frozen at phi^0.
    pub fn first_order(phi0: &CellField, params: &SchemeParams) -> Self {
        let coeffs = FrozenCoefficients::from_phi_star(phi0.clone(), params.gamma);
        Self {
            spec: phi0.spec(),
            phi_star: coeffs.phi_star,
            a_face: coeffs.a_phi_star,
            mobility: coeffs.mobility,
            chi_data: None,
            lap_coeff: params.epsilon * params.epsilon,
            gamma: params.gamma,
            s: params.dt,
        }
    }

    /// Rediscretize on the next coarser level: restrict the frozen fields and
    /// rebuild the face coefficients there.
    pub fn coarsen(&self) -> Self {
        let phi_star = crate::fas::restrict_cell(&self.phi_star);
        let chi_data = self.chi_data.as_ref().map(crate::fas::restrict_cell);
        let coeffs = FrozenCoefficients::from_phi_star(phi_star, self.gamma);
        Self {
            spec: coeffs.phi_star.spec(),
            phi_star: coeffs.phi_star,
            a_face: coeffs.a_phi_star,
            mobility: coeffs.mobility,
            chi_data,
            lap_coeff: self.lap_coeff,
            gamma: self.gamma,
            s: self.s,
        }
    }

    #[inline]
    pub(crate) fn nonlinear(&self, phi: f64, i: usize, j: usize) -> f64 {
        match &self.chi_data {
            Some(pm) => chi_scalar(phi, pm.at(i, j)),
            None => phi * phi * phi,
        }
    }

    #[inline]
    pub(crate) fn nonlinear_prime(&self, phi: f64, i: usize, j: usize) -> f64 {
        match &self.chi_data {
            Some(pm) => chi_prime_scalar(phi, pm.at(i, j)),
            None => 3.0 * phi * phi,
        }
    }

    // Face fluxes. Boundary-normal faces are identically zero; interior faces
    // combine the frozen coefficient with a one-sided difference. These four
    // helpers are the single source of truth for the arithmetic of the scheme;
    // eval_into and eval_cell both go through them.

    #[inline]
    fn flux_phi_x(&self, mu: &CellField, p: &CellField, i: usize, j: usize) -> f64 {
        if i == 0 || i == self.spec.nx {
            return 0.0;
        }
        let h = self.spec.h;
        let dmu = (mu.at(i + 1, j) - mu.at(i, j)) / h;
        let dp = (p.at(i + 1, j) - p.at(i, j)) / h;
        self.mobility.fx(i, j) * dmu + self.a_face.fx(i, j) * dp
    }

    #[inline]
    fn flux_phi_y(&self, mu: &CellField, p: &CellField, i: usize, j: usize) -> f64 {
        if j == 0 || j == self.spec.ny {
            return 0.0;
        }
        let h = self.spec.h;
        let dmu = (mu.at(i, j + 1) - mu.at(i, j)) / h;
        let dp = (p.at(i, j + 1) - p.at(i, j)) / h;
        self.mobility.fy(i, j) * dmu + self.a_face.fy(i, j) * dp
    }

    #[inline]
    fn grad_x(&self, f: &CellField, i: usize, j: usize) -> f64 {
        if i == 0 || i == self.spec.nx {
            return 0.0;
        }
        (f.at(i + 1, j) - f.at(i, j)) / self.spec.h
    }

    #[inline]
    fn grad_y(&self, f: &CellField, i: usize, j: usize) -> f64 {
        if j == 0 || j == self.spec.ny {
            return 0.0;
        }
        (f.at(i, j + 1) - f.at(i, j)) / self.spec.h
    }

    #[inline]
    fn flux_p_x(&self, mu: &CellField, p: &CellField, i: usize, j: usize) -> f64 {
        if i == 0 || i == self.spec.nx {
            return 0.0;
        }
        let h = self.spec.h;
        let dmu = (mu.at(i + 1, j) - mu.at(i, j)) / h;
        let dp = (p.at(i + 1, j) - p.at(i, j)) / h;
        dp + self.gamma * (self.a_face.fx(i, j) * dmu)
    }

    #[inline]
    fn flux_p_y(&self, mu: &CellField, p: &CellField, i: usize, j: usize) -> f64 {
        if j == 0 || j == self.spec.ny {
            return 0.0;
        }
        let h = self.spec.h;
        let dmu = (mu.at(i, j + 1) - mu.at(i, j)) / h;
        let dp = (p.at(i, j + 1) - p.at(i, j)) / h;
        dp + self.gamma * (self.a_face.fy(i, j) * dmu)
    }

    /// N(v) over the whole interior. `flux` is scratch; output ghosts are not
    /// maintained (the solver never reads them).
    pub fn eval_into(&self, v: &FieldTriple, flux: &mut MacField, out: &mut FieldTriple) {
        let s = self.spec;
        let h = s.h;

        // phi equation: phi - s div( M grad mu + A grad p )
        for j in 1..=s.ny {
            for i in 0..=s.nx {
                flux.set_fx(i, j, self.flux_phi_x(&v.mu, &v.p, i, j));
            }
        }
        for j in 0..=s.ny {
            for i in 1..=s.nx {
                flux.set_fy(i, j, self.flux_phi_y(&v.mu, &v.p, i, j));
            }
        }
        for j in 1..=s.ny {
            for i in 1..=s.nx {
                let div = (flux.fx(i, j) - flux.fx(i - 1, j)) / h
                    + (flux.fy(i, j) - flux.fy(i, j - 1)) / h;
                out.phi.set(i, j, v.phi.at(i, j) - self.s * div);
            }
        }

        // mu equation: mu - chi(phi, .) + lap_coeff lap phi
        for j in 1..=s.ny {
            for i in 0..=s.nx {
                flux.set_fx(i, j, self.grad_x(&v.phi, i, j));
            }
        }
        for j in 0..=s.ny {
            for i in 1..=s.nx {
                flux.set_fy(i, j, self.grad_y(&v.phi, i, j));
            }
        }
        for j in 1..=s.ny {
            for i in 1..=s.nx {
                let lap = (flux.fx(i, j) - flux.fx(i - 1, j)) / h
                    + (flux.fy(i, j) - flux.fy(i, j - 1)) / h;
                out.mu.set(
                    i,
                    j,
                    v.mu.at(i, j) - self.nonlinear(v.phi.at(i, j), i, j) + self.lap_coeff * lap,
                );
            }
        }

        // p equation: div( grad p + gamma A grad mu )
        for j in 1..=s.ny {
            for i in 0..=s.nx {
                flux.set_fx(i, j, self.flux_p_x(&v.mu, &v.p, i, j));
            }
        }
        for j in 0..=s.ny {
            for i in 1..=s.nx {
                flux.set_fy(i, j, self.flux_p_y(&v.mu, &v.p, i, j));
            }
        }
        for j in 1..=s.ny {
            for i in 1..=s.nx {
                let div = (flux.fx(i, j) - flux.fx(i - 1, j)) / h
                    + (flux.fy(i, j) - flux.fy(i, j - 1)) / h;
                out.p.set(i, j, div);
            }
        }
    }

    /// N(v) at a single cell, same arithmetic as `eval_into`. This is what the
    /// pointwise smoother evaluates against the current neighbor values.
    #[inline]
    pub fn eval_cell(&self, v: &FieldTriple, i: usize, j: usize) -> (f64, f64, f64) {
        let h = self.spec.h;
        let div_f = (self.flux_phi_x(&v.mu, &v.p, i, j) - self.flux_phi_x(&v.mu, &v.p, i - 1, j))
            / h
            + (self.flux_phi_y(&v.mu, &v.p, i, j) - self.flux_phi_y(&v.mu, &v.p, i, j - 1)) / h;
        let n_phi = v.phi.at(i, j) - self.s * div_f;

        let lap = (self.grad_x(&v.phi, i, j) - self.grad_x(&v.phi, i - 1, j)) / h
            + (self.grad_y(&v.phi, i, j) - self.grad_y(&v.phi, i, j - 1)) / h;
        let n_mu = v.mu.at(i, j) - self.nonlinear(v.phi.at(i, j), i, j) + self.lap_coeff * lap;

        let n_p = (self.flux_p_x(&v.mu, &v.p, i, j) - self.flux_p_x(&v.mu, &v.p, i - 1, j)) / h
            + (self.flux_p_y(&v.mu, &v.p, i, j) - self.flux_p_y(&v.mu, &v.p, i, j - 1)) / h;
        (n_phi, n_mu, n_p)
    }

    /// Mobility at the four faces of cell (i, j), zeroed on boundary faces, in
    /// (E, W, N, S) order.
    #[inline]
    pub(crate) fn mobility_around(&self, i: usize, j: usize) -> (f64, f64, f64, f64) {
        let s = self.spec;
        let e = if i < s.nx {
            self.mobility.fx(i, j)
        } else {
            0.0
        };
        let w = if i > 1 {
            self.mobility.fx(i - 1, j)
        } else {
            0.0
        };
        let n = if j < s.ny {
            self.mobility.fy(i, j)
        } else {
            0.0
        };
        let so = if j > 1 {
            self.mobility.fy(i, j - 1)
        } else {
            0.0
        };
        (e, w, n, so)
    }

    /// A_h phi* at the four faces, zeroed on boundary faces, (E, W, N, S).
    #[inline]
    pub(crate) fn a_face_around(&self, i: usize, j: usize) -> (f64, f64, f64, f64) {
        let s = self.spec;
        let e = if i < s.nx { self.a_face.fx(i, j) } else { 0.0 };
        let w = if i > 1 { self.a_face.fx(i - 1, j) } else { 0.0 };
        let n = if j < s.ny { self.a_face.fy(i, j) } else { 0.0 };
        let so = if j > 1 { self.a_face.fy(i, j - 1) } else { 0.0 };
        (e, w, n, so)
    }

    /// Number of interior (non-boundary) faces of cell (i, j).
    #[inline]
    pub(crate) fn open_faces(&self, i: usize, j: usize) -> f64 {
        let s = self.spec;
        let mut n = 0.0;
        if i < s.nx {
            n += 1.0;
        }
        if i > 1 {
            n += 1.0;
        }
        if j < s.ny {
            n += 1.0;
        }
        if j > 1 {
            n += 1.0;
        }
        n
    }
}

/// Finest-level right-hand side of the second-order step:
/// b_phi = phi^m, b_mu = -phi* - 1/4 eps^2 lap_h phi^{m-1}, b_p = 0.
pub fn second_order_rhs(
    state: &TimeState,
    coeffs: &FrozenCoefficients,
    params: &SchemeParams,
) -> FieldTriple {
    let spec = state.phi_m.spec();
    let lap_old = laplacian(&state.phi_mm1);
    let quarter_eps2 = 0.25 * params.epsilon * params.epsilon;
    let mut b_mu = CellField::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            b_mu.set(
                i,
                j,
                -coeffs.phi_star.at(i, j) - quarter_eps2 * lap_old.at(i, j),
            );
        }
    }
    FieldTriple {
        phi: state.phi_m.clone(),
        mu: b_mu,
        p: CellField::zeros(spec),
    }
}

/// Finest-level right-hand side of the first-order bootstrap:
/// b_phi = phi^0, b_mu = -phi^0, b_p = 0.
pub fn first_order_rhs(phi0: &CellField) -> FieldTriple {
    let spec = phi0.spec();
    let mut b_mu = CellField::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            b_mu.set(i, j, -phi0.at(i, j));
        }
    }
    FieldTriple {
        phi: phi0.clone(),
        mu: b_mu,
        p: CellField::zeros(spec),
    }
}

/// Residual of the coupled system at a candidate (phi, mu, p):
///
///   r_phi = phi - phi^m - s div(M grad mu) - s div(A grad p)
///   r_mu  = mu - chi(phi, phi^m) + phi* + eps^2 lap(3/4 phi + 1/4 phi^{m-1})
///   r_p   = lap p + gamma div(A grad mu)
///
/// computed as N(v) - b; all three vanish at the scheme solution.
pub fn assemble_residual(
    candidate: &FieldTriple,
    state: &TimeState,
    coeffs: &FrozenCoefficients,
    params: &SchemeParams,
) -> FieldTriple {
    let spec = state.phi_m.spec();
    let op = SystemOp::second_order(coeffs, &state.phi_m, params);
    let b = second_order_rhs(state, coeffs, params);
    let mut n = FieldTriple::zeros(spec);
    let mut flux = MacField::zeros(spec);
    op.eval_into(candidate, &mut flux, &mut n);
    let mut r = FieldTriple::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            r.phi.set(i, j, n.phi.at(i, j) - b.phi.at(i, j));
            r.mu.set(i, j, n.mu.at(i, j) - b.mu.at(i, j));
            r.p.set(i, j, n.p.at(i, j) - b.p.at(i, j));
        }
    }
    r
}

/// u = -grad_h p - gamma A_h phi* grad_h mu on faces; boundary-normal faces
/// are exactly zero. Inputs must be ghosted.
pub fn reconstruct_velocity(
    mu: &CellField,
    p: &CellField,
    coeffs: &FrozenCoefficients,
    params: &SchemeParams,
) -> MacField {
    let spec = mu.spec();
    let gp = gradient(p);
    let gm = gradient(mu);
    let mut u = MacField::zeros(spec);
    for j in 1..=spec.ny {
        for i in 0..=spec.nx {
            u.set_fx(
                i,
                j,
                -gp.fx(i, j) - params.gamma * (coeffs.a_phi_star.fx(i, j) * gm.fx(i, j)),
            );
        }
    }
    for j in 0..=spec.ny {
        for i in 1..=spec.nx {
            u.set_fy(
                i,
                j,
                -gp.fy(i, j) - params.gamma * (coeffs.a_phi_star.fy(i, j) * gm.fy(i, j)),
            );
        }
    }
    u.zero_normal_faces();
    u
}

/// Sub-steps used to march the first-order bootstrap from t = 0 to t = s.
/// One full-size first-order step leaves an O(s^2) phi_tt kick that dominates
/// rough initial transients; sub-stepping divides that defect by the count.
pub const BOOTSTRAP_SUBSTEPS: usize = 32;

/// Produce phi^1 by marching the first-order convex-splitting scheme (implicit
/// phi^3 and -eps^2 lap phi, explicit phi, coefficients frozen at the current
/// iterate) from phi^0 to t = s in `BOOTSTRAP_SUBSTEPS` sub-steps, solved by
/// the same FAS machinery. Reports the cycles of the final sub-step's solve.
pub fn bootstrap_first_step(
    phi0: &CellField,
    params: &SchemeParams,
    mg: &MgConfig,
) -> Result<(TimeState, SolveReport), SolveError> {
    bootstrap_first_order(phi0, params, mg, BOOTSTRAP_SUBSTEPS)
}

/// As `bootstrap_first_step` with an explicit sub-step count.
pub fn bootstrap_first_order(
    phi0: &CellField,
    params: &SchemeParams,
    mg: &MgConfig,
    substeps: usize,
) -> Result<(TimeState, SolveReport), SolveError> {
    assert!(substeps >= 1);
    let mut phi0 = phi0.clone();
    phi0.fill_ghosts_neumann();
    let spec = phi0.spec();

    let sub = SchemeParams {
        dt: params.dt / substeps as f64,
        ..*params
    };
    let mut phi = phi0.clone();
    let mut mu = chemical_potential(&phi0, params.epsilon);
    let mut p = CellField::zeros(spec);
    let mut u = MacField::zeros(spec);
    let mut report = SolveReport {
        cycles: 0,
        residual: 0.0,
    };
    for _ in 0..substeps {
        let op = SystemOp::first_order(&phi, &sub);
        let coeffs = FrozenCoefficients::from_phi_star(phi.clone(), sub.gamma);
        let rhs = first_order_rhs(&phi);
        let guess = FieldTriple {
            phi: phi.clone(),
            mu: mu.clone(),
            p: p.clone(),
        };
        let mut hierarchy = MgHierarchy::build(op, *mg)?;
        let (mut sol, rep) = hierarchy.solve(rhs, guess)?;
        sol.phi.fill_ghosts_neumann();
        sol.mu.fill_ghosts_neumann();
        sol.p.fill_ghosts_neumann();
        u = reconstruct_velocity(&sol.mu, &sol.p, &coeffs, &sub);
        phi = sol.phi;
        mu = sol.mu;
        p = sol.p;
        report = rep;
    }

    let state = TimeState {
        phi_mm1: phi0,
        phi_m: phi,
        mu_prev: mu.clone(),
        mu,
        p_prev: p.clone(),
        p,
        u,
        step: 1,
        time: params.dt,
    };
    Ok((state, report))
}

/// Advance one second-order step: freeze coefficients at (phi^m, phi^{m-1}),
/// solve the coupled system, reconstruct the velocity, and shift history.
pub fn advance_step(
    state: &mut TimeState,
    params: &SchemeParams,
    mg: &MgConfig,
) -> Result<SolveReport, SolveError> {
    debug_assert!(state.step >= 1, "advance_step needs two history levels");
    let coeffs = FrozenCoefficients::build(&state.phi_m, &state.phi_mm1, params.gamma);
    let op = SystemOp::second_order(&coeffs, &state.phi_m, params);
    let rhs = second_order_rhs(state, &coeffs, params);
    let guess = state.predicted_guess();

    let mut hierarchy = MgHierarchy::build(op, *mg)?;
    let (mut sol, report) = hierarchy.solve(rhs, guess)?;
    sol.phi.fill_ghosts_neumann();
    sol.mu.fill_ghosts_neumann();
    sol.p.fill_ghosts_neumann();
    let u = reconstruct_velocity(&sol.mu, &sol.p, &coeffs, params);

    state.phi_mm1 = std::mem::replace(&mut state.phi_m, sol.phi);
    state.mu_prev = std::mem::replace(&mut state.mu, sol.mu);
    state.p_prev = std::mem::replace(&mut state.p, sol.p);
    state.u = u;
    state.step += 1;
    state.time = state.step as f64 * params.dt;
    Ok(report)
}
