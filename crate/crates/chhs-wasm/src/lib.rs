//! Browser bindings for the Cahn-Hilliard-Hele-Shaw solver: interactive
//! spinodal decomposition and the smooth convergence-benchmark flow, stepped
//! from JavaScript with the phase field and energy history exposed for
//! rendering.

use wasm_bindgen::prelude::*;

use chhs_core::config::{Bootstrap, RunConfig};
use chhs_core::grid::GridSpec;
use chhs_core::init::{init_benchmark, init_spinodal};
use chhs_core::run::Simulation;
use chhs_core::scheme::SchemeParams;

// Validation and stepping stay in plain Rust (testable on any target);
// JsError is only materialized at the exported boundary.

fn check_grid(n: u32) -> Result<usize, String> {
    let n = n as usize;
    if !(4..=512).contains(&n) || !n.is_power_of_two() {
        return Err("grid size must be a power of two between 4 and 512".into());
    }
    Ok(n)
}

fn advance_sim(sim: &mut Simulation, count: u32) -> Result<(), String> {
    for _ in 0..count {
        sim.advance().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn phi_f32(sim: &Simulation) -> Vec<f32> {
    let spec = sim.state.phi_m.spec();
    let mut out = Vec::with_capacity(spec.nx * spec.ny);
    for j in 1..=spec.ny {
        for i in 1..=spec.nx {
            out.push(sim.state.phi_m.at(i, j) as f32);
        }
    }
    out
}

/// Spinodal decomposition of a random binary mixture in a Hele-Shaw cell.
#[wasm_bindgen]
pub struct SpinodalDemo {
    sim: Simulation,
    n: usize,
}

#[wasm_bindgen]
impl SpinodalDemo {
    /// `n` cells per side (power of two), surface-tension coupling `gamma`
    /// (0 disables the flow), RNG `seed`, time step `dt`.
    #[wasm_bindgen(constructor)]
    pub fn new(n: u32, gamma: f64, seed: u32, dt: f64) -> Result<SpinodalDemo, JsError> {
        Self::build(n, gamma, seed, dt).map_err(|e| JsError::new(&e))
    }

    fn build(n: u32, gamma: f64, seed: u32, dt: f64) -> Result<SpinodalDemo, String> {
        let n = check_grid(n)?;
        if !(dt > 0.0 && dt <= 10.0) {
            return Err("dt must be in (0, 10]".into());
        }
        if !(0.0..=100.0).contains(&gamma) {
            return Err("gamma must be in [0, 100]".into());
        }
        let base = RunConfig::spinodal();
        let spec = GridSpec::square(base.lx, n).map_err(|e| e.to_string())?;
        let phi0 = init_spinodal(spec, base.phi_bar, base.noise_amp, seed as u64);
        let params = SchemeParams::new(base.epsilon, gamma, dt).map_err(|e| e.to_string())?;
        let sim = Simulation::new(&phi0, params, base.mg, Bootstrap::FirstOrder);
        Ok(SpinodalDemo { sim, n })
    }

    /// Advance `count` time steps.
    pub fn step(&mut self, count: u32) -> Result<(), JsError> {
        advance_sim(&mut self.sim, count).map_err(|e| JsError::new(&e))
    }

    /// Interior phase values, row-major, length size*size.
    pub fn phi(&self) -> Vec<f32> {
        phi_f32(&self.sim)
    }

    pub fn size(&self) -> u32 {
        self.n as u32
    }

    pub fn time(&self) -> f64 {
        self.sim.state.time
    }

    pub fn step_count(&self) -> u32 {
        self.sim.state.step as u32
    }

    /// Discrete free energy E_h at the current step.
    pub fn energy(&self) -> f64 {
        self.sim.last_record().e_h
    }

    /// Dissipated (history-augmented) energy F_h.
    pub fn fh(&self) -> f64 {
        self.sim.last_record().f_h
    }

    pub fn mass(&self) -> f64 {
        self.sim.last_record().mass
    }

    /// V-cycles the last step's nonlinear solve needed.
    pub fn last_cycles(&self) -> u32 {
        self.sim.last_record().vcycles as u32
    }

    /// Time stamps of all recorded steps.
    pub fn series_t(&self) -> Vec<f64> {
        self.sim.records.iter().map(|r| r.t).collect()
    }

    /// E_h per recorded step.
    pub fn series_energy(&self) -> Vec<f64> {
        self.sim.records.iter().map(|r| r.e_h).collect()
    }

    /// F_h per recorded step (non-increasing by construction).
    pub fn series_fh(&self) -> Vec<f64> {
        self.sim.records.iter().map(|r| r.f_h).collect()
    }
}

/// The smooth cosine-product benchmark flow on [0, 3.2]^2.
#[wasm_bindgen]
pub struct BenchmarkDemo {
    sim: Simulation,
    n: usize,
}

#[wasm_bindgen]
impl BenchmarkDemo {
    /// `n` cells per side (power of two); the time step follows the
    /// refinement path dt = 0.05 h.
    #[wasm_bindgen(constructor)]
    pub fn new(n: u32, gamma: f64) -> Result<BenchmarkDemo, JsError> {
        Self::build(n, gamma).map_err(|e| JsError::new(&e))
    }

    fn build(n: u32, gamma: f64) -> Result<BenchmarkDemo, String> {
        let n = check_grid(n)?;
        if !(0.0..=100.0).contains(&gamma) {
            return Err("gamma must be in [0, 100]".into());
        }
        let base = RunConfig::benchmark();
        let spec = GridSpec::square(base.lx, n).map_err(|e| e.to_string())?;
        let phi0 = init_benchmark(spec);
        let dt = 0.05 * base.lx / n as f64;
        let params = SchemeParams::new(base.epsilon, gamma, dt).map_err(|e| e.to_string())?;
        let sim = Simulation::new(&phi0, params, base.mg, Bootstrap::FirstOrder);
        Ok(BenchmarkDemo { sim, n })
    }

    pub fn step(&mut self, count: u32) -> Result<(), JsError> {
        advance_sim(&mut self.sim, count).map_err(|e| JsError::new(&e))
    }

    pub fn phi(&self) -> Vec<f32> {
        phi_f32(&self.sim)
    }

    pub fn size(&self) -> u32 {
        self.n as u32
    }

    pub fn time(&self) -> f64 {
        self.sim.state.time
    }

    pub fn energy(&self) -> f64 {
        self.sim.last_record().e_h
    }

    pub fn fh(&self) -> f64 {
        self.sim.last_record().f_h
    }

    pub fn mass(&self) -> f64 {
        self.sim.last_record().mass
    }

    pub fn last_cycles(&self) -> u32 {
        self.sim.last_record().vcycles as u32
    }

    pub fn series_t(&self) -> Vec<f64> {
        self.sim.records.iter().map(|r| r.t).collect()
    }

    pub fn series_energy(&self) -> Vec<f64> {
        self.sim.records.iter().map(|r| r.e_h).collect()
    }

    pub fn series_fh(&self) -> Vec<f64> {
        self.sim.records.iter().map(|r| r.f_h).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spinodal_demo_steps_and_dissipates() {
        let mut demo = SpinodalDemo::build(32, 2.0, 7, 0.01).unwrap();
        advance_sim(&mut demo.sim, 5).unwrap();
        assert_eq!(demo.phi().len(), 32 * 32);
        assert_eq!(demo.step_count(), 5);
        let fh = demo.series_fh();
        for w in fh.windows(2).skip(1) {
            assert!(w[1] <= w[0] + 1e-8 * w[0].abs().max(1.0));
        }
        assert!(demo.last_cycles() > 0);
    }

    #[test]
    fn benchmark_demo_mass_stays_put() {
        let mut demo = BenchmarkDemo::build(32, 2.0).unwrap();
        let m0 = demo.mass();
        assert!((m0 + 5.12).abs() < 1e-10);
        advance_sim(&mut demo.sim, 3).unwrap();
        assert!((demo.mass() - m0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SpinodalDemo::build(48, 2.0, 1, 0.01).is_err());
        assert!(SpinodalDemo::build(0, 2.0, 1, 0.01).is_err());
        assert!(BenchmarkDemo::build(1024, 2.0).is_err());
    }
}
