#![allow(dead_code)]

use salience_core::behavior::Policy;
use salience_core::economy::{calibrate_lognormal, CalibrationSpec, Economy};
use salience_core::welfare::decompose;

pub const RHOS: [f64; 3] = [0.1, 1.0, 3.0];
pub const EPSILONS: [f64; 2] = [0.25, 0.5];

/// The calibrated 2000-agent US-style economy.
pub fn reference_economy(epsilon: f64, rho: f64) -> Economy {
    calibrate_lognormal(&CalibrationSpec::reference(epsilon, rho)).expect("reference calibration")
}

pub fn welfare(e: &Economy, tau: f64, s: f64) -> f64 {
    decompose(e, &Policy::new(tau, s).unwrap()).unwrap().welfare
}

pub fn efficiency(e: &Economy, tau: f64, s: f64) -> f64 {
    decompose(e, &Policy::new(tau, s).unwrap()).unwrap().mu
}

pub fn equality(e: &Economy, tau: f64, s: f64) -> f64 {
    decompose(e, &Policy::new(tau, s).unwrap()).unwrap().equality
}

/// Fourth-order central first derivative.
pub fn d1<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Fourth-order central second derivative.
pub fn d2<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

pub fn rel_err(approx: f64, exact: f64) -> f64 {
    (approx - exact).abs() / exact.abs().max(1e-300)
}
