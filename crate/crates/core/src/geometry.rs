//! The equality-efficiency frontier.
//!
//! At fixed salience, equality rises with the tax rate over the admissible
//! interval, so every attainable equality level `E` pins down a unique tax
//! `tau_check(E, s)` and an efficiency `mu_check(E, s)`. The s-optimum is the
//! point where the frontier touches the highest iso-welfare curve
//! `E * mu = const`.

use serde::{Deserialize, Serialize};

use crate::behavior::{admissible_tau_bound, allocation, dchat_dtau, Policy};
use crate::economy::Economy;
use crate::error::{Error, Result};
use crate::numeric::{bisect, central_difference, MAX_BISECTION_ITERATIONS};
use crate::optimizer::{s_optimal_tax, BOUND_MARGIN, TAU_FLOOR};
use crate::welfare::{decompose, equality_partials, mu_partials};

/// Bracket width at which equality inversion stops.
pub const EQUALITY_TAU_TOL: f64 = 1e-14;

/// Default salience step for derivatives along the frontier.
pub const DEFAULT_SALIENCE_STEP: f64 = 1e-3;

/// Relative size of the frontier shift used to differentiate the relaxed optimum.
const DELTA_RELATIVE_STEP: f64 = 1e-4;

/// A point on the equality-efficiency frontier at salience `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    #[serde(rename = "E")]
    pub equality: f64,
    pub s: f64,
    pub tau_check: f64,
    pub mu_check: f64,
    /// `-d mu_check / d E`, efficiency given up per unit of equality.
    pub p_e: f64,
}

fn upper_tau(economy: &Economy, s: f64) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::DomainViolation(format!("salience {s} outside (0, 1]")));
    }
    Ok(admissible_tau_bound(s, economy.epsilon())? - BOUND_MARGIN)
}

fn equality_at(economy: &Economy, tau: f64, s: f64) -> Result<f64> {
    decompose(economy, &Policy::new(tau, s)?).map(|d| d.equality)
}

/// Equality at a zero tax and at the admissible upper tax bound.
pub fn admissible_equality_range(economy: &Economy, s: f64) -> Result<(f64, f64)> {
    let upper = upper_tau(economy, s)?;
    Ok((equality_at(economy, 0.0, s)?, equality_at(economy, upper, s)?))
}

/// `E(tau, s) = E_target` solved for an admissible `tau`.
pub fn tau_for_equality(economy: &Economy, e_target: f64, s: f64, tol: f64) -> Result<FrontierPoint> {
    let upper = upper_tau(economy, s)?;
    let (lo, hi) = admissible_equality_range(economy, s)?;
    if !(e_target >= lo && e_target <= hi) || hi <= lo {
        return Err(Error::EqualityOutOfRange { target: e_target, lo, hi });
    }
    let tau = bisect(
        |tau| equality_at(economy, tau, s).map(|e| e - e_target),
        0.0,
        upper,
        tol,
        MAX_BISECTION_ITERATIONS,
    )?;
    frontier_point_at(economy, tau, s)
}

/// The frontier point generated by the policy `(tau, s)`.
pub fn frontier_point_at(economy: &Economy, tau: f64, s: f64) -> Result<FrontierPoint> {
    let policy = Policy::new(tau, s)?;
    let decomposition = decompose(economy, &policy)?;
    let e_tau = equality_partials(economy, &policy)?.de_dtau;
    Ok(FrontierPoint {
        equality: decomposition.equality,
        s,
        tau_check: tau,
        mu_check: decomposition.mu,
        p_e: -mu_partials(economy, &policy).dmu_dtau / e_tau,
    })
}

/// `n` frontier points spanning the attainable equality range at `s`.
pub fn equality_efficiency_curve(economy: &Economy, s: f64, n: usize) -> Result<Vec<FrontierPoint>> {
    let upper = upper_tau(economy, s)?;
    (0..n)
        .map(|i| {
            let tau = if n == 1 { 0.0 } else { upper * i as f64 / (n - 1) as f64 };
            frontier_point_at(economy, tau, s)
        })
        .collect()
}

/// Salience derivative of the price of equality along an iso-equality path,
/// with the two components whose signs make it positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriceSlope {
    pub dp_ds: f64,
    /// `d/ds [-mu_tau]`: the marginal efficiency cost of the tax.
    pub d_cost_ds: f64,
    /// `d/ds [E_tau]`: the marginal equality benefit of the tax.
    pub d_benefit_ds: f64,
}

/// Differentiates along `s`, centrally where `s ± h` is inside (0, 1] and
/// one-sided at full salience.
fn salience_derivative<F>(s: f64, h: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h > 0.0) || s - h <= 0.0 {
        return Err(Error::DomainViolation(format!("salience step {h} invalid at s = {s}")));
    }
    if s + h <= 1.0 {
        central_difference(&mut f, s, h)
    } else {
        Ok((f(s)? - f(s - h)?) / h)
    }
}

pub fn price_of_equality_derivative(economy: &Economy, e: f64, s: f64, h: f64) -> Result<PriceSlope> {
    let point = |s: f64| tau_for_equality(economy, e, s, EQUALITY_TAU_TOL);
    let cost = |s: f64| -> Result<f64> {
        let p = point(s)?;
        Ok(-mu_partials(economy, &Policy::new(p.tau_check, s)?).dmu_dtau)
    };
    let benefit = |s: f64| -> Result<f64> {
        let p = point(s)?;
        Ok(equality_partials(economy, &Policy::new(p.tau_check, s)?)?.de_dtau)
    };
    Ok(PriceSlope {
        dp_ds: salience_derivative(s, h, |s| point(s).map(|p| p.p_e))?,
        d_cost_ds: salience_derivative(s, h, cost)?,
        d_benefit_ds: salience_derivative(s, h, benefit)?,
    })
}

/// Closed-form iso-equality path through `(s0, tau0)`:
/// `tau(s) = tau0 / (1 - eps tau0 (s - s0))`.
pub fn iso_equality_tau(epsilon: f64, tau0: f64, s0: f64, s: f64) -> f64 {
    tau0 / (1.0 - epsilon * tau0 * (s - s0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoEqualityPoint {
    pub s: f64,
    /// Tax found by inverting equality at `s`.
    pub tau_numeric: f64,
    /// Tax from the closed-form path.
    pub tau_analytic: f64,
}

/// Holds equality at `e` while salience moves from `s0` to `s1` in `n_steps`.
pub fn iso_equality_path(economy: &Economy, e: f64, s0: f64, s1: f64, n_steps: usize) -> Result<Vec<IsoEqualityPoint>> {
    let eps = economy.epsilon();
    let tau0 = tau_for_equality(economy, e, s0, EQUALITY_TAU_TOL)?.tau_check;
    let steps = if s1 == s0 { 0 } else { n_steps.max(1) };
    let path = (0..=steps).map(|k| {
        let s = if k == steps { s1 } else { s0 + (s1 - s0) * k as f64 / steps as f64 };
        let tau_analytic = iso_equality_tau(eps, tau0, s0, s);
        let leaves = || Error::PathLeavesAdmissibleRegion { s, tau: tau_analytic };
        let admissible = tau_analytic > 0.0
            && Policy::new(tau_analytic, s).map(|p| p.is_admissible(eps)).unwrap_or(false);
        if !admissible {
            return Err(leaves());
        }
        let tau_numeric = match tau_for_equality(economy, e, s, EQUALITY_TAU_TOL) {
            Ok(p) => p.tau_check,
            Err(Error::EqualityOutOfRange { .. } | Error::DomainViolation(_)) => return Err(leaves()),
            Err(other) => return Err(other),
        };
        Ok(IsoEqualityPoint { s, tau_numeric, tau_analytic })
    });
    path.collect()
}

/// Efficiency as a function of the perceived rate `t = s tau` alone:
/// `mu = P_bar (1 - t)^eps (1 + eps t) / (1 + eps)`.
pub fn efficiency_at_perceived_rate(economy: &Economy, t: f64) -> f64 {
    let eps = economy.epsilon();
    economy.mean_potential_income() * (1.0 - t).powf(eps) * (1.0 + eps * t) / (1.0 + eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoEfficiencyPoint {
    pub s: f64,
    pub tau: f64,
}

/// The perceived rate `C` at which efficiency equals `mu_target`.
pub fn perceived_rate_for_efficiency(economy: &Economy, mu_target: f64) -> Result<f64> {
    let top = efficiency_at_perceived_rate(economy, 0.0);
    if !(mu_target > 0.0 && mu_target <= top) {
        return Err(Error::DomainViolation(format!(
            "efficiency {mu_target} outside (0, {top}]"
        )));
    }
    bisect(
        |t| Ok(efficiency_at_perceived_rate(economy, t) - mu_target),
        0.0,
        1.0,
        EQUALITY_TAU_TOL,
        MAX_BISECTION_ITERATIONS,
    )
}

/// `tau = C / s` through each salience in `s_values`, holding efficiency at `mu_target`.
pub fn iso_efficiency_path(economy: &Economy, mu_target: f64, s_values: &[f64]) -> Result<Vec<IsoEfficiencyPoint>> {
    let c = perceived_rate_for_efficiency(economy, mu_target)?;
    s_values
        .iter()
        .map(|&s| {
            let tau = c / s;
            let admissible = Policy::new(tau, s).map(|p| p.is_admissible(economy.epsilon())).unwrap_or(false);
            if admissible {
                Ok(IsoEfficiencyPoint { s, tau })
            } else {
                Err(Error::DomainViolation(format!("tau = {tau} is not admissible at s = {s}")))
            }
        })
        .collect()
}

/// Maximizer of `E * (mu_check(E, s) + delta)`, the s-optimum on a frontier
/// shifted outward by `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxedOptimum {
    #[serde(rename = "E")]
    pub equality: f64,
    pub tau: f64,
    pub mu: f64,
    pub objective: f64,
}

/// Scaled derivative of `E (mu + delta)` in `tau`:
/// `xi_tau / xi - delta mu_tau / (mu (mu + delta))`.
fn relaxed_foc(economy: &Economy, policy: &Policy, delta: f64) -> Result<f64> {
    let d = decompose(economy, policy)?;
    let profile = allocation(economy, policy);
    let rho = economy.rho();
    let c_tau = dchat_dtau(economy, policy);
    let xi_tau = profile
        .c_hat
        .iter()
        .zip(&c_tau)
        .map(|(c, ct)| (c / d.xi).powf(-rho) * ct)
        .sum::<f64>()
        / profile.c_hat.len() as f64;
    let mu_tau = mu_partials(economy, policy).dmu_dtau;
    Ok(xi_tau / d.xi - delta * mu_tau / (d.mu * (d.mu + delta)))
}

pub fn relaxed_optimum(economy: &Economy, s: f64, delta: f64, tol: f64) -> Result<RelaxedOptimum> {
    let upper = upper_tau(economy, s)?;
    let tau = bisect(
        |tau| relaxed_foc(economy, &Policy::new(tau, s)?, delta),
        TAU_FLOOR,
        upper,
        tol,
        MAX_BISECTION_ITERATIONS,
    )?;
    let d = decompose(economy, &Policy::new(tau, s)?)?;
    if d.mu + delta <= 0.0 {
        return Err(Error::DomainViolation(format!("shift {delta} leaves no positive frontier")));
    }
    Ok(RelaxedOptimum {
        equality: d.equality,
        tau,
        mu: d.mu,
        objective: d.equality * (d.mu + delta),
    })
}

/// Change in optimal equality from a salience increase, split into a
/// movement along the compensated frontier and a frontier contraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectDecomposition {
    /// `dE/ds` along the frontier of s-optima.
    pub total: f64,
    /// Derivative of compensated equality demand.
    pub substitution: f64,
    /// `dE_rel/d delta * d mu_check/ds`.
    pub income: f64,
    /// Compensation `mu_check(E0, s0) - mu_check(E0, s0 + h)`.
    pub delta_used: f64,
    pub de_rel_ddelta: f64,
    pub dmu_check_ds: f64,
}

impl EffectDecomposition {
    pub fn identity_gap(&self) -> f64 {
        (self.total - (self.substitution + self.income)).abs()
    }

    pub fn identity_tolerance(&self) -> f64 {
        (1e-3 * self.total.abs()).max(1e-6)
    }
}

/// Decomposes `dE/ds` at `s0` using salience step `h`.
pub fn effect_decomposition(economy: &Economy, s0: f64, h: f64, tol: f64) -> Result<EffectDecomposition> {
    if !(h > 0.0 && s0 - h > 0.0 && s0 + h <= 1.0) {
        return Err(Error::DomainViolation(format!("s0 = {s0} with step {h} is not interior")));
    }
    let optimum = s_optimal_tax(economy, s0, tol)?;
    let e0 = optimum.equality;
    let mu_check = |s: f64| tau_for_equality(economy, e0, s, EQUALITY_TAU_TOL).map(|p| p.mu_check);
    let mu0 = mu_check(s0)?;
    let delta = |s1: f64| mu_check(s1).map(|m| mu0 - m);
    let compensated = |s1: f64| relaxed_optimum(economy, s1, delta(s1)?, tol).map(|r| r.equality);

    let optimal_e = |s: f64| s_optimal_tax(economy, s, tol).map(|r| r.equality);
    let total = central_difference(optimal_e, s0, h)?;
    let substitution = central_difference(compensated, s0, h)?;
    let dd = DELTA_RELATIVE_STEP * optimum.mu;
    let de_rel_ddelta = central_difference(|d| relaxed_optimum(economy, s0, d, tol).map(|r| r.equality), 0.0, dd)?;
    let dmu_check_ds = central_difference(mu_check, s0, h)?;

    let result = EffectDecomposition {
        total,
        substitution,
        income: de_rel_ddelta * dmu_check_ds,
        delta_used: delta(s0 + h)?,
        de_rel_ddelta,
        dmu_check_ds,
    };
    if result.identity_gap() > result.identity_tolerance() {
        return Err(Error::DecompositionMismatch {
            total: result.total,
            sum: result.substitution + result.income,
        });
    }
    Ok(result)
}
