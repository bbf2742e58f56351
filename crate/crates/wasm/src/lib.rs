//! Browser bindings for the `bolab` demo page.
//!
//! Three operations are exposed: a live simulation driven by a config text,
//! a table of linear dispersion symbols, and `|F|` of the holomorphic
//! extension of a Gaussian above the real axis.
//!
//! The wrappers only translate errors; the logic lives in plain functions so
//! it can be tested natively.

use bolab::analysis::diagnostics;
use bolab::complex_ext::{halfplane_extend, strip_extend_ilw, ExtensionGrid, STRIP_GUARD};
use bolab::ic;
use bolab::io::{config::RunConfig, parse_config};
use bolab::models::{bo_symbol_im, ilw_symbol_im, kdv_symbol_im, EquationSpec, SimState};
use bolab::spectral::make_grid;
use bolab::timestep::Integrator;
use bolab::{Error, Result};
use wasm_bindgen::prelude::*;

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Stepper state owned by the page.
#[wasm_bindgen]
pub struct Simulation {
    cfg: RunConfig,
    spec: EquationSpec,
    stepper: Integrator,
    state: SimState,
}

impl Simulation {
    pub fn from_config(text: &str) -> Result<Self> {
        let cfg = parse_config(text)?;
        let spec = cfg.equation();
        let u0 = cfg.initial_field()?;
        let stepper = Integrator::new(&spec, *u0.grid())?;
        Ok(Self {
            cfg,
            spec,
            stepper,
            state: SimState::new(u0, 0.0),
        })
    }

    /// Takes `steps` steps of the configured `dt`, stopping early on blow-up.
    pub fn advance(&mut self, steps: u32) -> Result<()> {
        for _ in 0..steps {
            self.state = self.stepper.step(&self.state, self.cfg.dt)?;
        }
        Ok(())
    }

    /// `[mass, l2, hamiltonian (NaN if none), tail fraction, sup norm]`.
    pub fn diagnostic_values(&self) -> Result<Vec<f64>> {
        let d = diagnostics(&self.state, &self.spec)?;
        Ok(vec![
            d.mass,
            d.l2,
            d.hamiltonian.unwrap_or(f64::NAN),
            d.spectral_tail_fraction,
            d.sup_norm,
        ])
    }
}

#[wasm_bindgen]
impl Simulation {
    #[wasm_bindgen(constructor)]
    pub fn new(config: &str) -> std::result::Result<Simulation, JsError> {
        Self::from_config(config).map_err(js)
    }

    pub fn step(&mut self, steps: u32) -> std::result::Result<(), JsError> {
        self.advance(steps).map_err(js)
    }

    pub fn time(&self) -> f64 {
        self.state.t
    }

    pub fn model(&self) -> String {
        self.spec.name()
    }

    pub fn x(&self) -> Vec<f64> {
        self.state.u.grid().points()
    }

    pub fn u(&self) -> Vec<f64> {
        self.state.u.samples().to_vec()
    }

    pub fn diagnostics(&self) -> std::result::Result<Vec<f64>, JsError> {
        self.diagnostic_values().map_err(js)
    }
}

/// Rows of `[ξ, BO, ILW(δ), (3/δ)·ILW(δ), KdV]` for `ξ` in `[0, xi_max]`,
/// flattened row-major. All entries are `Im Λ(ξ)`.
#[wasm_bindgen]
pub fn dispersion_table(delta: f64, xi_max: f64, count: usize) -> Vec<f64> {
    let count = count.max(2);
    let mut out = Vec::with_capacity(5 * count);
    for i in 0..count {
        let xi = xi_max * i as f64 / (count - 1) as f64;
        let ilw = ilw_symbol_im(xi, delta);
        out.extend([
            xi,
            bo_symbol_im(xi),
            ilw,
            3.0 * ilw / delta,
            kdv_symbol_im(xi),
        ]);
    }
    out
}

/// `|F|` sampled on `rows` heights (first row on the real axis), row-major
/// with `n` columns. `delta <= 0` selects the half-plane extension of
/// `f + iHf` up to `y_max`; otherwise the strip extension of
/// `∂_x f + i L_δ∂_x f`, with `y_max` clipped to just inside the strip.
pub fn extension_modulus(
    n: usize,
    length: f64,
    width: f64,
    delta: f64,
    y_max: f64,
    rows: usize,
) -> Result<Vec<f64>> {
    let grid = make_grid(n, length)?;
    let f = ic::gaussian(&grid, 1.0, 0.0, width);
    let rows = rows.max(2);
    let top = if delta > 0.0 {
        y_max.min(STRIP_GUARD * 2.0 * delta * 0.999)
    } else {
        y_max
    };
    let heights: Vec<f64> = (0..rows)
        .map(|m| top * m as f64 / (rows - 1) as f64)
        .collect();
    let ext: ExtensionGrid = if delta > 0.0 {
        strip_extend_ilw(&f, delta, &heights)?
    } else {
        halfplane_extend(&f, &heights)?
    };
    Ok(ext.rows().iter().flatten().map(|v| v.norm()).collect())
}

#[wasm_bindgen]
pub fn extension_heatmap(
    n: usize,
    length: f64,
    width: f64,
    delta: f64,
    y_max: f64,
    rows: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    extension_modulus(n, length, width, delta, y_max, rows).map_err(js)
}
