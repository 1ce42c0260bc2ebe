//! The computations behind each export, free of any JavaScript types.

use salience_core::economy::{calibrate_lognormal, CalibrationSpec, Economy};
use salience_core::geometry::{equality_efficiency_curve, frontier_point_at};
use salience_core::optimizer::{frontier_sweep, linear_grid, s_optimal_tax, DEFAULT_TOL};
use salience_core::twotax::{feasibility_bound, to_two_tax};

type Result<T> = std::result::Result<T, String>;

fn economy(rho: f64, epsilon: f64, n_agents: usize) -> Result<Economy> {
    let spec = CalibrationSpec { n_agents, ..CalibrationSpec::reference(epsilon, rho) };
    calibrate_lognormal(&spec).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frontier {
    pub s: Vec<f64>,
    pub tau: Vec<f64>,
    pub tau_perceived: Vec<f64>,
    pub mu: Vec<f64>,
    pub equality: Vec<f64>,
    pub welfare: Vec<f64>,
}

pub fn frontier(rho: f64, epsilon: f64, n_agents: usize, n_points: usize) -> Result<Frontier> {
    let e = economy(rho, epsilon, n_agents)?;
    let rows = frontier_sweep(&e, &linear_grid(0.05, 1.0, n_points), DEFAULT_TOL).map_err(|e| e.to_string())?;
    Ok(Frontier {
        s: rows.iter().map(|r| r.s).collect(),
        tau: rows.iter().map(|r| r.tau_star).collect(),
        tau_perceived: rows.iter().map(|r| r.tau_perceived).collect(),
        mu: rows.iter().map(|r| r.mu).collect(),
        equality: rows.iter().map(|r| r.equality).collect(),
        welfare: rows.iter().map(|r| r.welfare).collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub equality: Vec<f64>,
    pub mu: Vec<f64>,
    pub optimal_equality: f64,
    pub optimal_mu: f64,
    pub optimal_tau: f64,
    pub price: f64,
}

pub fn curve(rho: f64, epsilon: f64, s: f64, n_agents: usize, n_points: usize) -> Result<Curve> {
    let e = economy(rho, epsilon, n_agents)?;
    let points = equality_efficiency_curve(&e, s, n_points).map_err(|e| e.to_string())?;
    let row = s_optimal_tax(&e, s, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let at_optimum = frontier_point_at(&e, row.tau_star, s).map_err(|e| e.to_string())?;
    Ok(Curve {
        equality: points.iter().map(|p| p.equality).collect(),
        mu: points.iter().map(|p| p.mu_check).collect(),
        optimal_equality: row.equality,
        optimal_mu: row.mu,
        optimal_tau: row.tau_star,
        price: at_optimum.p_e,
    })
}

pub fn two_tax(tau: f64, s: f64, s_c: f64) -> Result<Vec<f64>> {
    let p = to_two_tax(tau, s, s_c).map_err(|e| e.to_string())?;
    Ok(vec![p.tau_l, p.tau_c, feasibility_bound(tau, s_c)])
}
