//! Independent straight-line re-implementation of the residual stencils, the
//! frozen coefficients, and one coupled red-black smoother sweep, written
//! against plain nested arrays. Every formula is spelled out cell by cell with
//! the same floating-point expression shapes as the library so the comparison
//! is exact, but nothing here calls into the library's operators.

use chhs_core::fas::smooth;
use chhs_core::grid::{CellField, GridSpec, MacField};
use chhs_core::scheme::{
    assemble_residual, second_order_rhs, FieldTriple, FrozenCoefficients, SchemeParams, SystemOp,
    TimeState,
};

/// (n+2) x (n+2) array with ghost ring, indexed a[j][i].
type Arr = Vec<Vec<f64>>;

fn zeros(n: usize) -> Arr {
    vec![vec![0.0; n + 2]; n + 2]
}

fn to_arr(f: &CellField, n: usize) -> Arr {
    let mut a = zeros(n);
    for j in 0..=n + 1 {
        for i in 0..=n + 1 {
            a[j][i] = f.at(i, j);
        }
    }
    a
}

struct Hand {
    n: usize,
    h: f64,
    eps: f64,
    gamma: f64,
    s: f64,
    phim: Arr,
    phimm1: Arr,
    /// extrapolated 1.5 phi^m - 0.5 phi^{m-1}, ghosted
    pstar: Arr,
}

impl Hand {
    fn new(phim: Arr, phimm1: Arr, n: usize, h: f64, eps: f64, gamma: f64, s: f64) -> Self {
        let mut pstar = zeros(n);
        for j in 0..=n + 1 {
            for i in 0..=n + 1 {
                pstar[j][i] = 1.5 * phim[j][i] - 0.5 * phimm1[j][i];
            }
        }
        Self {
            n,
            h,
            eps,
            gamma,
            s,
            phim,
            phimm1,
            pstar,
        }
    }

    fn chi(a: f64, b: f64) -> f64 {
        0.25 * (a * a + b * b) * (a + b)
    }

    fn chi_prime(a: f64, b: f64) -> f64 {
        0.25 * (3.0 * a * a + 2.0 * a * b + b * b)
    }

    /// A_h phi* on the east face of cell (i, j); only valid for i < n.
    fn a_e(&self, i: usize, j: usize) -> f64 {
        0.5 * (self.pstar[j][i] + self.pstar[j][i + 1])
    }

    fn a_n(&self, i: usize, j: usize) -> f64 {
        0.5 * (self.pstar[j][i] + self.pstar[j + 1][i])
    }

    fn mob_e(&self, i: usize, j: usize) -> f64 {
        let a = self.a_e(i, j);
        1.0 + self.gamma * a * a
    }

    fn mob_n(&self, i: usize, j: usize) -> f64 {
        let a = self.a_n(i, j);
        1.0 + self.gamma * a * a
    }

    /// Combined flux M grad mu + A grad p on the east face of (i, j).
    fn flux_phi_e(&self, mu: &Arr, p: &Arr, i: usize, j: usize) -> f64 {
        if i == 0 || i == self.n {
            return 0.0;
        }
        let dmu = (mu[j][i + 1] - mu[j][i]) / self.h;
        let dp = (p[j][i + 1] - p[j][i]) / self.h;
        self.mob_e(i, j) * dmu + self.a_e(i, j) * dp
    }

    fn flux_phi_n(&self, mu: &Arr, p: &Arr, i: usize, j: usize) -> f64 {
        if j == 0 || j == self.n {
            return 0.0;
        }
        let dmu = (mu[j + 1][i] - mu[j][i]) / self.h;
        let dp = (p[j + 1][i] - p[j][i]) / self.h;
        self.mob_n(i, j) * dmu + self.a_n(i, j) * dp
    }

    fn grad_e(&self, f: &Arr, i: usize, j: usize) -> f64 {
        if i == 0 || i == self.n {
            return 0.0;
        }
        (f[j][i + 1] - f[j][i]) / self.h
    }

    fn grad_n(&self, f: &Arr, i: usize, j: usize) -> f64 {
        if j == 0 || j == self.n {
            return 0.0;
        }
        (f[j + 1][i] - f[j][i]) / self.h
    }

    fn flux_p_e(&self, mu: &Arr, p: &Arr, i: usize, j: usize) -> f64 {
        if i == 0 || i == self.n {
            return 0.0;
        }
        let dmu = (mu[j][i + 1] - mu[j][i]) / self.h;
        let dp = (p[j][i + 1] - p[j][i]) / self.h;
        dp + self.gamma * (self.a_e(i, j) * dmu)
    }

    fn flux_p_n(&self, mu: &Arr, p: &Arr, i: usize, j: usize) -> f64 {
        if j == 0 || j == self.n {
            return 0.0;
        }
        let dmu = (mu[j + 1][i] - mu[j][i]) / self.h;
        let dp = (p[j + 1][i] - p[j][i]) / self.h;
        dp + self.gamma * (self.a_n(i, j) * dmu)
    }

    /// The three equations N(v) at one cell.
    fn n_at(&self, phi: &Arr, mu: &Arr, p: &Arr, i: usize, j: usize) -> (f64, f64, f64) {
        let h = self.h;
        let div_f = (self.flux_phi_e(mu, p, i, j) - self.flux_phi_e(mu, p, i - 1, j)) / h
            + (self.flux_phi_n(mu, p, i, j) - self.flux_phi_n(mu, p, i, j - 1)) / h;
        let n_phi = phi[j][i] - self.s * div_f;

        let lap = (self.grad_e(phi, i, j) - self.grad_e(phi, i - 1, j)) / h
            + (self.grad_n(phi, i, j) - self.grad_n(phi, i, j - 1)) / h;
        let lap_coeff = 0.75 * self.eps * self.eps;
        let n_mu = mu[j][i] - Self::chi(phi[j][i], self.phim[j][i]) + lap_coeff * lap;

        let n_p = (self.flux_p_e(mu, p, i, j) - self.flux_p_e(mu, p, i - 1, j)) / h
            + (self.flux_p_n(mu, p, i, j) - self.flux_p_n(mu, p, i, j - 1)) / h;
        (n_phi, n_mu, n_p)
    }

    /// Right-hand side of the second-order step at one cell.
    fn b_at(&self, i: usize, j: usize) -> (f64, f64, f64) {
        let h = self.h;
        let lap_old = (self.grad_e(&self.phimm1, i, j) - self.grad_e(&self.phimm1, i - 1, j)) / h
            + (self.grad_n(&self.phimm1, i, j) - self.grad_n(&self.phimm1, i, j - 1)) / h;
        let quarter_eps2 = 0.25 * self.eps * self.eps;
        let b_phi = self.phim[j][i];
        let b_mu = -self.pstar[j][i] - quarter_eps2 * lap_old;
        (b_phi, b_mu, 0.0)
    }

    /// Residual N(v) - b over the interior.
    fn residual(&self, phi: &Arr, mu: &Arr, p: &Arr) -> (Arr, Arr, Arr) {
        let n = self.n;
        let (mut rp, mut rm, mut rpr) = (zeros(n), zeros(n), zeros(n));
        for j in 1..=n {
            for i in 1..=n {
                let (np, nm, npr) = self.n_at(phi, mu, p, i, j);
                let (bp, bm, bpr) = self.b_at(i, j);
                rp[j][i] = np - bp;
                rm[j][i] = nm - bm;
                rpr[j][i] = npr - bpr;
            }
        }
        (rp, rm, rpr)
    }

    /// One red-black sweep of the coupled pointwise Newton update, then the
    /// pressure mean re-pin.
    fn sweep(&self, phi: &mut Arr, mu: &mut Arr, p: &mut Arr, b: &(Arr, Arr, Arr)) {
        let n = self.n;
        let hh = self.h * self.h;
        let lap_coeff = 0.75 * self.eps * self.eps;
        for color in 0..2usize {
            for j in 1..=n {
                for i in 1..=n {
                    if (i + j) % 2 != color {
                        continue;
                    }
                    let (n_phi, n_mu, n_p) = self.n_at(phi, mu, p, i, j);
                    let d1 = b.0[j][i] - n_phi;
                    let d2 = b.1[j][i] - n_mu;
                    let d3 = b.2[j][i] - n_p;

                    let me = if i < n { self.mob_e(i, j) } else { 0.0 };
                    let mw = if i > 1 { self.mob_e(i - 1, j) } else { 0.0 };
                    let mn = if j < n { self.mob_n(i, j) } else { 0.0 };
                    let ms = if j > 1 { self.mob_n(i, j - 1) } else { 0.0 };
                    let ae = if i < n { self.a_e(i, j) } else { 0.0 };
                    let aw = if i > 1 { self.a_e(i - 1, j) } else { 0.0 };
                    let an = if j < n { self.a_n(i, j) } else { 0.0 };
                    let aso = if j > 1 { self.a_n(i, j - 1) } else { 0.0 };
                    let sm = me + mw + mn + ms;
                    let sa = ae + aw + an + aso;
                    let mut n_open = 0.0;
                    if i < n {
                        n_open += 1.0;
                    }
                    if i > 1 {
                        n_open += 1.0;
                    }
                    if j < n {
                        n_open += 1.0;
                    }
                    if j > 1 {
                        n_open += 1.0;
                    }

                    let chip = Self::chi_prime(phi[j][i], self.phim[j][i]);
                    let j12 = self.s * sm / hh;
                    let j13 = self.s * sa / hh;
                    let j21 = -(chip + lap_coeff * (n_open / hh));
                    let j32 = -(self.gamma * sa / hh);
                    let j33 = -(n_open / hh);

                    let dmu =
                        (d1 - d2 / j21 - j13 * d3 / j33) / (j12 - 1.0 / j21 - j13 * j32 / j33);
                    let dphi = (d2 - dmu) / j21;
                    let dp = (d3 - j32 * dmu) / j33;

                    phi[j][i] += dphi;
                    mu[j][i] += dmu;
                    p[j][i] += dp;
                }
            }
        }
        let mut acc = 0.0;
        for j in 1..=n {
            for i in 1..=n {
                acc += p[j][i];
            }
        }
        let mean = acc / (n * n) as f64;
        for j in 1..=n {
            for i in 1..=n {
                p[j][i] -= mean;
            }
        }
    }
}

fn scrambled(spec: GridSpec, seed: u64, amp: f64) -> CellField {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0x9);
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        ((z >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * 2.0 - 1.0) * amp
    };
    let mut f = CellField::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            f.set(i, j, next());
        }
    }
    f.fill_ghosts_neumann();
    f
}

/// Compare residual assembly and one smoother sweep on random states; returns
/// (states checked, cells compared). Panics on the first mismatch.
pub fn run_all() -> (usize, usize) {
    let mut states = 0usize;
    let mut cells = 0usize;
    for n in [4usize, 8] {
        let spec = GridSpec::square(0.4 * n as f64, n).unwrap();
        for k in 0..50u64 {
            let gamma = match k % 3 {
                0 => 0.0,
                1 => 2.0,
                _ => 3.5,
            };
            let eps = 0.15 + 0.02 * (k % 7) as f64;
            let dt = 0.004 + 0.003 * (k % 5) as f64;
            let params = SchemeParams::new(eps, gamma, dt).unwrap();

            let phi_m = scrambled(spec, k * 11 + n as u64, 1.0);
            let phi_mm1 = scrambled(spec, k * 11 + n as u64 + 1, 1.0);
            let cand = FieldTriple {
                phi: scrambled(spec, k * 11 + n as u64 + 2, 1.0),
                mu: scrambled(spec, k * 11 + n as u64 + 3, 2.0),
                p: scrambled(spec, k * 11 + n as u64 + 4, 1.5),
            };
            let state = TimeState {
                phi_m: phi_m.clone(),
                phi_mm1: phi_mm1.clone(),
                mu_prev: CellField::zeros(spec),
                mu: CellField::zeros(spec),
                p_prev: CellField::zeros(spec),
                p: CellField::zeros(spec),
                u: MacField::zeros(spec),
                step: 1,
                time: dt,
            };
            let coeffs = FrozenCoefficients::build(&phi_m, &phi_mm1, gamma);

            let hand = Hand::new(
                to_arr(&phi_m, n),
                to_arr(&phi_mm1, n),
                n,
                spec.h,
                eps,
                gamma,
                dt,
            );
            let (hp, hm, hpr) = {
                let phi = to_arr(&cand.phi, n);
                let mu = to_arr(&cand.mu, n);
                let p = to_arr(&cand.p, n);
                hand.residual(&phi, &mu, &p)
            };

            let r = assemble_residual(&cand, &state, &coeffs, &params);
            for j in 1..=n {
                for i in 1..=n {
                    assert_eq!(r.phi.at(i, j), hp[j][i], "r_phi at ({i},{j}) n={n} k={k}");
                    assert_eq!(r.mu.at(i, j), hm[j][i], "r_mu at ({i},{j}) n={n} k={k}");
                    assert_eq!(r.p.at(i, j), hpr[j][i], "r_p at ({i},{j}) n={n} k={k}");
                    cells += 3;
                }
            }

            // one smoother sweep, library vs hand-stepped
            let op = SystemOp::second_order(&coeffs, &state.phi_m, &params);
            let b = second_order_rhs(&state, &coeffs, &params);
            let mut v = cand.clone();
            smooth(&op, &b, &mut v, 1);

            let mut phi = to_arr(&cand.phi, n);
            let mut mu = to_arr(&cand.mu, n);
            let mut p = to_arr(&cand.p, n);
            let hb = {
                let (mut bp, mut bm, mut bpr) = (zeros(n), zeros(n), zeros(n));
                for j in 1..=n {
                    for i in 1..=n {
                        let t = hand.b_at(i, j);
                        bp[j][i] = t.0;
                        bm[j][i] = t.1;
                        bpr[j][i] = t.2;
                    }
                }
                // the hand rhs must itself agree with the library's
                for j in 1..=n {
                    for i in 1..=n {
                        assert_eq!(b.phi.at(i, j), bp[j][i], "b_phi at ({i},{j})");
                        assert_eq!(b.mu.at(i, j), bm[j][i], "b_mu at ({i},{j})");
                        assert_eq!(b.p.at(i, j), bpr[j][i], "b_p at ({i},{j})");
                    }
                }
                (bp, bm, bpr)
            };
            hand.sweep(&mut phi, &mut mu, &mut p, &hb);
            for j in 1..=n {
                for i in 1..=n {
                    assert_eq!(
                        v.phi.at(i, j),
                        phi[j][i],
                        "swept phi at ({i},{j}) n={n} k={k}"
                    );
                    assert_eq!(v.mu.at(i, j), mu[j][i], "swept mu at ({i},{j}) n={n} k={k}");
                    assert_eq!(v.p.at(i, j), p[j][i], "swept p at ({i},{j}) n={n} k={k}");
                    cells += 3;
                }
            }
            states += 1;
        }
    }
    (states, cells)
}
