//! WebAssembly bindings behind the static demo page in `www/`.
//!
//! Each export calibrates the reference economy at the requested
//! elasticity and aversion, so the page only passes plain numbers.
//! Computation lives in [`demo`], which is ordinary Rust and tested natively.

use wasm_bindgen::prelude::*;

pub mod demo;

fn js(e: String) -> JsError {
    JsError::new(&e)
}

/// Optimal states along a salience grid.
#[wasm_bindgen]
pub struct FrontierSeries(demo::Frontier);

#[wasm_bindgen]
impl FrontierSeries {
    #[wasm_bindgen(getter)]
    pub fn s(&self) -> Vec<f64> {
        self.0.s.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn tau(&self) -> Vec<f64> {
        self.0.tau.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn tau_perceived(&self) -> Vec<f64> {
        self.0.tau_perceived.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn mu(&self) -> Vec<f64> {
        self.0.mu.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn equality(&self) -> Vec<f64> {
        self.0.equality.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn welfare(&self) -> Vec<f64> {
        self.0.welfare.clone()
    }
}

#[wasm_bindgen]
pub fn frontier(rho: f64, epsilon: f64, n_agents: usize, n_points: usize) -> Result<FrontierSeries, JsError> {
    demo::frontier(rho, epsilon, n_agents, n_points).map(FrontierSeries).map_err(js)
}

/// Attainable (equality, efficiency) pairs at one salience and the optimum on them.
#[wasm_bindgen]
pub struct EqualityEfficiency(demo::Curve);

#[wasm_bindgen]
impl EqualityEfficiency {
    #[wasm_bindgen(getter)]
    pub fn equality(&self) -> Vec<f64> {
        self.0.equality.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn mu(&self) -> Vec<f64> {
        self.0.mu.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn optimal_equality(&self) -> f64 {
        self.0.optimal_equality
    }

    #[wasm_bindgen(getter)]
    pub fn optimal_mu(&self) -> f64 {
        self.0.optimal_mu
    }

    #[wasm_bindgen(getter)]
    pub fn optimal_tau(&self) -> f64 {
        self.0.optimal_tau
    }

    /// Price of equality at the optimum.
    #[wasm_bindgen(getter)]
    pub fn price(&self) -> f64 {
        self.0.price
    }
}

#[wasm_bindgen]
pub fn equality_efficiency(
    rho: f64,
    epsilon: f64,
    s: f64,
    n_agents: usize,
    n_points: usize,
) -> Result<EqualityEfficiency, JsError> {
    demo::curve(rho, epsilon, s, n_agents, n_points).map(EqualityEfficiency).map_err(js)
}

/// `[tau_l, tau_c, lowest feasible salience]` reproducing `(tau, s)`.
#[wasm_bindgen]
pub fn two_tax(tau: f64, s: f64, s_c: f64) -> Result<Vec<f64>, JsError> {
    demo::two_tax(tau, s, s_c).map_err(js)
}
