//! Uniform cell-centered / MAC grid, field storage with ghost layers, and
//! homogeneous Neumann boundary enforcement.
//!
//! Scalars (`CellField`) live at cell centers `((i-1/2)h, (j-1/2)h)` with one
//! ring of ghost cells; vector quantities (`MacField`) live at face centers in
//! the usual marker-and-cell staggering.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("cells must be square: Lx/nx = {hx} but Ly/ny = {hy}")]
    NonSquareCells { hx: f64, hy: f64 },
    #[error("grid must be at least 2x2 cells, got {nx}x{ny}")]
    TooSmall { nx: usize, ny: usize },
    #[error("domain lengths must be positive, got Lx = {lx}, Ly = {ly}")]
    NonPositiveDomain { lx: f64, ly: f64 },
}

/// Uniform 2D cell-centered grid with square cells of side `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lx: f64,
    pub ly: f64,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
}

impl GridSpec {
    /// Build a grid from domain lengths and cell counts; rejects non-square cells.
    pub fn new(lx: f64, ly: f64, nx: usize, ny: usize) -> Result<Self, GridError> {
        if !(lx > 0.0) || !(ly > 0.0) {
            return Err(GridError::NonPositiveDomain { lx, ly });
        }
        if nx < 2 || ny < 2 {
            return Err(GridError::TooSmall { nx, ny });
        }
        let hx = lx / nx as f64;
        let hy = ly / ny as f64;
        if (hx - hy).abs() > 1e-12 * hx.abs() {
            return Err(GridError::NonSquareCells { hx, hy });
        }
        Ok(Self {
            lx,
            ly,
            nx,
            ny,
            h: hx,
        })
    }

    /// Square domain `[0,l]^2` with `n` cells per side.
    pub fn square(l: f64, n: usize) -> Result<Self, GridError> {
        Self::new(l, l, n, n)
    }

    /// Build from cell counts and an exact spacing `h` (domain lengths derived).
    ///
    /// Used where `h` must round-trip bitwise (snapshots, coarse levels).
    pub fn from_spacing(nx: usize, ny: usize, h: f64) -> Result<Self, GridError> {
        if !(h > 0.0) {
            return Err(GridError::NonPositiveDomain { lx: h, ly: h });
        }
        if nx < 2 || ny < 2 {
            return Err(GridError::TooSmall { nx, ny });
        }
        Ok(Self {
            lx: h * nx as f64,
            ly: h * ny as f64,
            nx,
            ny,
            h,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.nx * self.ny
    }

    /// |Omega| = Lx * Ly.
    pub fn area(&self) -> f64 {
        self.lx * self.ly
    }

    /// Center of interior cell (i, j), 1-based.
    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        ((i as f64 - 0.5) * self.h, (j as f64 - 0.5) * self.h)
    }
}

/// Cell-centered scalar field with one ghost ring.
///
/// Storage is `(nx+2) x (ny+2)` row-major; interior cells are addressed by
/// logical indices `1..=nx`, `1..=ny`, ghosts by `0` and `n+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    spec: GridSpec,
    data: Vec<f64>,
}

impl CellField {
    pub fn zeros(spec: GridSpec) -> Self {
        let data = vec![0.0; (spec.nx + 2) * (spec.ny + 2)];
        Self { spec, data }
    }

    pub fn constant(spec: GridSpec, c: f64) -> Self {
        let data = vec![c; (spec.nx + 2) * (spec.ny + 2)];
        Self { spec, data }
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= self.spec.nx + 1 && j <= self.spec.ny + 1);
        j * (self.spec.nx + 2) + i
    }

    /// Value at logical index (i, j); interior is 1..=n, ghosts 0 and n+1.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        let k = self.idx(i, j);
        &mut self.data[k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    /// Interior values in row-major order (j outer, i inner).
    pub fn interior_values(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.spec.n_cells());
        for j in 1..=self.spec.ny {
            for i in 1..=self.spec.nx {
                out.push(self.at(i, j));
            }
        }
        out
    }

    /// Mirror each ghost cell from its adjacent interior cell, enforcing the
    /// discrete homogeneous Neumann condition n . grad_h = 0. Interior values
    /// are untouched; corners mirror from the adjacent edge ghosts so that a
    /// constant field stays constant everywhere.
    pub fn fill_ghosts_neumann(&mut self) {
        let (nx, ny) = (self.spec.nx, self.spec.ny);
        for j in 1..=ny {
            let v = self.at(1, j);
            self.set(0, j, v);
            let v = self.at(nx, j);
            self.set(nx + 1, j, v);
        }
        for i in 1..=nx {
            let v = self.at(i, 1);
            self.set(i, 0, v);
            let v = self.at(i, ny);
            self.set(i, ny + 1, v);
        }
        // corner ghosts (unused by the 5-point stencils, kept consistent)
        let v = self.at(1, 1);
        self.set(0, 0, v);
        let v = self.at(nx, 1);
        self.set(nx + 1, 0, v);
        let v = self.at(1, ny);
        self.set(0, ny + 1, v);
        let v = self.at(nx, ny);
        self.set(nx + 1, ny + 1, v);
    }

    /// Apply `f` to every stored value (ghosts included).
    pub fn map_in_place(&mut self, mut f: impl FnMut(f64) -> f64) {
        for v in &mut self.data {
            *v = f(*v);
        }
    }

    /// self[k] += c * other[k] over all stored values (ghosts included).
    pub fn axpy(&mut self, c: f64, other: &CellField) {
        assert_eq!(self.spec, other.spec, "CellField::axpy: grid mismatch");
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += c * *b;
        }
    }
}

/// Project a continuous function onto cell centers and fill the ghosts.
pub fn project_function<F: Fn(f64, f64) -> f64>(g: F, spec: GridSpec) -> CellField {
    let mut out = CellField::zeros(spec);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            let (x, y) = spec.cell_center(i, j);
            out.set(i, j, g(x, y));
        }
    }
    out.fill_ghosts_neumann();
    out
}

/// Staggered face-centered vector field on the MAC grid.
///
/// `fx` holds x-face values at `(i h, (j-1/2) h)` for `i = 0..=nx`, rows
/// `j = 1..=ny`; `fy` holds y-face values at `((i-1/2) h, j h)` for
/// `j = 0..=ny`, columns `i = 1..=nx`. Faces `0` and `n` are the boundary
/// faces.
#[derive(Debug, Clone, PartialEq)]
pub struct MacField {
    spec: GridSpec,
    fx: Vec<f64>,
    fy: Vec<f64>,
}

impl MacField {
    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            spec,
            fx: vec![0.0; (spec.nx + 1) * spec.ny],
            fy: vec![0.0; spec.nx * (spec.ny + 1)],
        }
    }

    pub fn constant(spec: GridSpec, cx: f64, cy: f64) -> Self {
        Self {
            spec,
            fx: vec![cx; (spec.nx + 1) * spec.ny],
            fy: vec![cy; spec.nx * (spec.ny + 1)],
        }
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    #[inline]
    fn ix(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= self.spec.nx && (1..=self.spec.ny).contains(&j));
        (j - 1) * (self.spec.nx + 1) + i
    }

    #[inline]
    fn iy(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.spec.nx).contains(&i) && j <= self.spec.ny);
        j * self.spec.nx + (i - 1)
    }

    /// x-face value at face i (0..=nx) in cell row j (1..=ny).
    #[inline]
    pub fn fx(&self, i: usize, j: usize) -> f64 {
        self.fx[self.ix(i, j)]
    }

    /// y-face value at face j (0..=ny) in cell column i (1..=nx).
    #[inline]
    pub fn fy(&self, i: usize, j: usize) -> f64 {
        self.fy[self.iy(i, j)]
    }

    #[inline]
    pub fn set_fx(&mut self, i: usize, j: usize, v: f64) {
        let k = self.ix(i, j);
        self.fx[k] = v;
    }

    #[inline]
    pub fn set_fy(&mut self, i: usize, j: usize, v: f64) {
        let k = self.iy(i, j);
        self.fy[k] = v;
    }

    /// Zero every boundary-normal face, enforcing n . f = 0.
    pub fn zero_normal_faces(&mut self) {
        let (nx, ny) = (self.spec.nx, self.spec.ny);
        for j in 1..=ny {
            self.set_fx(0, j, 0.0);
            self.set_fx(nx, j, 0.0);
        }
        for i in 1..=nx {
            self.set_fy(i, 0, 0.0);
            self.set_fy(i, ny, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize) -> GridSpec {
        GridSpec::square(n as f64, n).unwrap()
    }

    #[test]
    fn spec_rejects_non_square_cells() {
        assert!(matches!(
            GridSpec::new(2.0, 1.0, 2, 2),
            Err(GridError::NonSquareCells { .. })
        ));
        assert!(GridSpec::new(2.0, 1.0, 4, 2).is_ok());
    }

    #[test]
    fn spec_rejects_tiny_grids() {
        assert!(matches!(
            GridSpec::new(1.0, 1.0, 1, 1),
            Err(GridError::TooSmall { .. })
        ));
    }

    #[test]
    fn ghost_mirrors_interior_column() {
        // interior column [1,2,3] at i=1 mirrors into the ghost column i=0
        let s = GridSpec::new(3.0, 3.0, 3, 3).unwrap();
        let mut f = CellField::zeros(s);
        for (j, v) in [(1, 1.0), (2, 2.0), (3, 3.0)] {
            f.set(1, j, v);
        }
        f.fill_ghosts_neumann();
        assert_eq!(f.at(0, 1), 1.0);
        assert_eq!(f.at(0, 2), 2.0);
        assert_eq!(f.at(0, 3), 3.0);
    }

    #[test]
    fn ghost_constant_field() {
        let mut f = CellField::constant(spec(4), 7.5);
        f.map_in_place(|_| 7.5);
        f.fill_ghosts_neumann();
        for j in 0..=5 {
            for i in 0..=5 {
                assert_eq!(f.at(i, j), 7.5);
            }
        }
    }

    #[test]
    fn ghost_two_by_two() {
        let s = spec(2);
        let mut f = CellField::zeros(s);
        f.set(1, 1, 1.0);
        f.set(2, 1, 2.0);
        f.fill_ghosts_neumann();
        assert_eq!(f.at(0, 1), 1.0);
        assert_eq!(f.at(3, 1), 2.0);
    }

    #[test]
    fn ghost_fill_is_idempotent() {
        let s = spec(5);
        let mut f = project_function(|x, y| (x * 1.3).sin() + y * y, s);
        let once = f.clone();
        f.fill_ghosts_neumann();
        assert_eq!(f, once);
    }

    #[test]
    fn zero_normal_faces_two_by_two() {
        let s = spec(2);
        let mut v = MacField::constant(s, 1.0, 1.0);
        v.zero_normal_faces();
        for j in 1..=2 {
            assert_eq!(v.fx(0, j), 0.0);
            assert_eq!(v.fx(2, j), 0.0);
            assert_eq!(v.fx(1, j), 1.0);
        }
        for i in 1..=2 {
            assert_eq!(v.fy(i, 0), 0.0);
            assert_eq!(v.fy(i, 2), 0.0);
            assert_eq!(v.fy(i, 1), 1.0);
        }
        // idempotent, and a fixed point on the zero field
        let w = v.clone();
        v.zero_normal_faces();
        assert_eq!(v, w);
        let mut z = MacField::zeros(s);
        let z0 = z.clone();
        z.zero_normal_faces();
        assert_eq!(z, z0);
    }

    #[test]
    fn project_zero_and_linear() {
        let s = spec(4);
        let z = project_function(|_, _| 0.0, s);
        assert!(z.interior_values().iter().all(|&v| v == 0.0));

        let s2 = GridSpec::new(2.0, 2.0, 2, 2).unwrap();
        let f = project_function(|x, _| x, s2);
        assert_eq!(f.at(1, 1), 0.5);
        assert_eq!(f.at(2, 1), 1.5);
    }
}
