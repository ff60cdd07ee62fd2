//! Discrete calculus on the MAC grid: gradient, divergence, Laplacian, face
//! averaging, inner products, and norms.
//!
//! With Neumann-ghosted inputs the gradient vanishes on boundary-normal faces,
//! which is what makes the summation-by-parts identities below hold exactly:
//!
//!   (phi, lap_h psi)  = -(grad_h phi, grad_h psi)   for Neumann psi,
//!   (phi, div_h u)    = -(grad_h phi, u)            for u with u.n = 0.
//!
//! All reductions run in a fixed row-major order so results are reproducible
//! bit for bit.

use crate::grid::{CellField, MacField};

/// fx(i+1/2,j) = (phi(i+1,j) - phi(i,j)) / h, likewise fy. Requires ghosts.
pub fn gradient_into(phi: &CellField, out: &mut MacField) {
    let s = phi.spec();
    assert_eq!(s, out.spec(), "gradient: grid mismatch");
    let h = s.h;
    for j in 1..=s.ny {
        for i in 0..=s.nx {
            out.set_fx(i, j, (phi.at(i + 1, j) - phi.at(i, j)) / h);
        }
    }
    for j in 0..=s.ny {
        for i in 1..=s.nx {
            out.set_fy(i, j, (phi.at(i, j + 1) - phi.at(i, j)) / h);
        }
    }
}

pub fn gradient(phi: &CellField) -> MacField {
    let mut out = MacField::zeros(phi.spec());
    gradient_into(phi, &mut out);
    out
}

/// Face-to-center divergence; ghosts of the result are left unfilled.
pub fn divergence_into(v: &MacField, out: &mut CellField) {
    let s = v.spec();
    assert_eq!(s, out.spec(), "divergence: grid mismatch");
    let h = s.h;
    for j in 1..=s.ny {
        for i in 1..=s.nx {
            let d = (v.fx(i, j) - v.fx(i - 1, j)) / h + (v.fy(i, j) - v.fy(i, j - 1)) / h;
            out.set(i, j, d);
        }
    }
}

pub fn divergence(v: &MacField) -> CellField {
    let mut out = CellField::zeros(v.spec());
    divergence_into(v, &mut out);
    out
}

/// lap_h := div_h . grad_h, evaluated literally as that composition.
pub fn laplacian(phi: &CellField) -> CellField {
    divergence(&gradient(phi))
}

/// A_h: arithmetic mean of the two neighbor cells on every face. On boundary
/// faces the ghost mirrors the interior cell, so the face takes its value.
pub fn face_average_into(phi: &CellField, out: &mut MacField) {
    let s = phi.spec();
    assert_eq!(s, out.spec(), "face_average: grid mismatch");
    for j in 1..=s.ny {
        for i in 0..=s.nx {
            out.set_fx(i, j, 0.5 * (phi.at(i, j) + phi.at(i + 1, j)));
        }
    }
    for j in 0..=s.ny {
        for i in 1..=s.nx {
            out.set_fy(i, j, 0.5 * (phi.at(i, j) + phi.at(i, j + 1)));
        }
    }
}

pub fn face_average(phi: &CellField) -> MacField {
    let mut out = MacField::zeros(phi.spec());
    face_average_into(phi, &mut out);
    out
}

/// (phi, psi) := h^2 * sum over interior cells.
pub fn inner_cell(a: &CellField, b: &CellField) -> f64 {
    let s = a.spec();
    assert_eq!(s, b.spec(), "inner_cell: grid mismatch");
    let mut acc = 0.0;
    for j in 1..=s.ny {
        for i in 1..=s.nx {
            acc += a.at(i, j) * b.at(i, j);
        }
    }
    acc * (s.h * s.h)
}

/// MAC inner product [f,g]_x + [f,g]_y. The two-sided cell sum in the
/// definition gives interior faces full weight and boundary faces half weight.
pub fn inner_mac(f: &MacField, g: &MacField) -> f64 {
    let s = f.spec();
    assert_eq!(s, g.spec(), "inner_mac: grid mismatch");
    let mut acc = 0.0;
    for j in 1..=s.ny {
        for i in 0..=s.nx {
            let w = if i == 0 || i == s.nx { 0.5 } else { 1.0 };
            acc += w * f.fx(i, j) * g.fx(i, j);
        }
    }
    for j in 0..=s.ny {
        let w = if j == 0 || j == s.ny { 0.5 } else { 1.0 };
        for i in 1..=s.nx {
            acc += w * f.fy(i, j) * g.fy(i, j);
        }
    }
    acc * (s.h * s.h)
}

/// (grad_h phi, grad_h psi). Requires ghosts on both fields.
pub fn inner_grad(a: &CellField, b: &CellField) -> f64 {
    inner_mac(&gradient(a), &gradient(b))
}

/// ||phi||_p = (|phi|^p, 1)^{1/p}. Only p in {1, 2, 4} is used by the scheme;
/// other orders panic.
pub fn norm_p(phi: &CellField, p: u32) -> f64 {
    let s = phi.spec();
    let mut acc = 0.0;
    match p {
        1 => {
            for j in 1..=s.ny {
                for i in 1..=s.nx {
                    acc += phi.at(i, j).abs();
                }
            }
        }
        2 => {
            for j in 1..=s.ny {
                for i in 1..=s.nx {
                    let v = phi.at(i, j);
                    acc += v * v;
                }
            }
        }
        4 => {
            for j in 1..=s.ny {
                for i in 1..=s.nx {
                    let v = phi.at(i, j);
                    let v2 = v * v;
                    acc += v2 * v2;
                }
            }
        }
        _ => panic!("norm_p: unsupported order p = {p} (supported: 1, 2, 4)"),
    }
    (acc * (s.h * s.h)).powf(1.0 / p as f64)
}

/// ||phi||_inf over interior cells.
pub fn norm_inf(phi: &CellField) -> f64 {
    let s = phi.spec();
    let mut m: f64 = 0.0;
    for j in 1..=s.ny {
        for i in 1..=s.nx {
            m = m.max(phi.at(i, j).abs());
        }
    }
    m
}

/// ||v||_2 under the MAC inner product.
pub fn mac_norm2(v: &MacField) -> f64 {
    inner_mac(v, v).sqrt()
}

/// Discrete H^1 norm: ||phi||_2^2 + ||grad_h phi||_2^2, square-rooted.
pub fn norm_h1(phi: &CellField) -> f64 {
    let g = gradient(phi);
    (inner_cell(phi, phi) + inner_mac(&g, &g)).sqrt()
}

/// Discrete H^3 norm: adds ||lap_h phi||_2^2 and ||grad_h lap_h phi||_2^2.
/// The intermediate Laplacian is re-ghosted before taking its gradient.
pub fn norm_h3(phi: &CellField) -> f64 {
    let g = gradient(phi);
    let mut lap = laplacian(phi);
    lap.fill_ghosts_neumann();
    let glap = gradient(&lap);
    (inner_cell(phi, phi) + inner_mac(&g, &g) + inner_cell(&lap, &lap) + inner_mac(&glap, &glap))
        .sqrt()
}

/// ||grad_h lap_h phi||_2^2, the integrand of the H^3-type stability sum.
/// The Laplacian is re-ghosted before its gradient is taken.
pub fn grad_lap_sq(phi: &CellField) -> f64 {
    let mut lap = laplacian(phi);
    lap.fill_ghosts_neumann();
    let g = gradient(&lap);
    inner_mac(&g, &g)
}
