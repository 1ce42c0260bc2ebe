//! The s-optimal tax and the morally efficient frontier.
//!
//! At fixed salience the welfare first-order condition has a single sign
//! change on the admissible interval, so the optimum is found by bisection on
//! it. The frontier is the set of s-optimal states over a salience grid.

use serde::{Deserialize, Serialize};

use crate::behavior::{admissible_tau_bound, allocation, Policy};
use crate::economy::Economy;
use crate::error::{Error, Result};
use crate::numeric::{bisect, golden_section_max, MAX_BISECTION_ITERATIONS};
use crate::welfare::decompose;

pub const DEFAULT_TOL: f64 = 1e-10;

/// Smallest tax rate probed; the first-order condition is positive there
/// for any economy with wage dispersion.
pub const TAU_FLOOR: f64 = 1e-12;

/// Distance kept from the admissible upper bound.
pub const BOUND_MARGIN: f64 = 1e-9;

/// The bracket is narrowed this far below `tol` so that residuals that
/// amplify the error in `tau` still land under `tol`.
const BRACKET_REFINEMENT: f64 = 1e-4;

/// Relative step of the second difference used for the second-order check.
const SOC_RELATIVE_STEP: f64 = 1e-4;

/// The three channels through which a marginal tax increase moves welfare.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocTerms {
    /// `mean(g (z_bar - z))`, gains from shifting income downwards.
    pub redistribution: f64,
    /// `(1-s) k mean(g z)` with `k = s tau eps / (1 - s tau)`, correction of over-work.
    pub internality: f64,
    /// `-k g_bar z_bar`, revenue lost to behavioral responses.
    pub fiscal_externality: f64,
    /// `g_bar z_bar`, the natural scale of the three terms.
    pub scale: f64,
}

impl FocTerms {
    /// `dW/dtau`.
    pub fn total(&self) -> f64 {
        self.redistribution + self.internality + self.fiscal_externality
    }

    /// `dW/dtau / (g_bar z_bar)`, free of the units of `W`.
    pub fn normalized(&self) -> f64 {
        self.total() / self.scale
    }
}

pub fn foc_terms(economy: &Economy, policy: &Policy) -> Result<FocTerms> {
    let profile = allocation(economy, policy);
    let weights = profile.weights_or_err()?;
    let n = profile.z.len() as f64;
    let (tau, s) = (policy.tau(), policy.s());
    let k = s * tau * economy.epsilon() / policy.perceived_retention();
    let z_bar = profile.z_bar;
    let (mut redistribution, mut gz) = (0.0, 0.0);
    for (g, z) in weights.g.iter().zip(&profile.z) {
        redistribution += g * (z_bar - z);
        gz += g * z;
    }
    Ok(FocTerms {
        redistribution: redistribution / n,
        internality: (1.0 - s) * k * gz / n,
        fiscal_externality: -k * weights.g_bar * z_bar,
        scale: weights.g_bar * z_bar,
    })
}

/// `dW/dtau` at `policy`.
pub fn foc_residual(economy: &Economy, policy: &Policy) -> Result<f64> {
    foc_terms(economy, policy).map(|t| t.total())
}

/// `|s tau eps / (1 - s tau) - (1 - h_bar) / (1 - (1-s) h_bar)|`, zero at
/// an s-optimal tax.
pub fn optimal_tax_formula_residual(epsilon: f64, policy: &Policy, h_bar: f64) -> f64 {
    let s = policy.s();
    let lhs = policy.perceived_rate() * epsilon / policy.perceived_retention();
    let rhs = (1.0 - h_bar) / (1.0 - (1.0 - s) * h_bar);
    (lhs - rhs).abs()
}

/// One point of the morally efficient frontier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierRow {
    pub s: f64,
    pub tau_star: f64,
    pub tau_perceived: f64,
    #[serde(rename = "W")]
    pub welfare: f64,
    pub xi: f64,
    pub mu: f64,
    #[serde(rename = "E")]
    pub equality: f64,
    pub h_bar: f64,
    pub revenue: f64,
    /// `|dW/dtau| / (g_bar z_bar)` at the optimum.
    pub foc_residual: f64,
    /// Second difference of `W` in `tau` at the optimum; negative.
    pub soc_value: f64,
    /// Residual of the optimal-tax formula in `h_bar`.
    pub formula_residual: f64,
    pub order_preserving_margin: f64,
    pub revenue_efficient_margin: f64,
    #[serde(skip)]
    pub economy: u64,
}

fn validate_salience(s: f64) -> Result<()> {
    if s > 0.0 && s <= 1.0 {
        Ok(())
    } else {
        Err(Error::DomainViolation(format!("salience {s} outside (0, 1]")))
    }
}

/// Welfare-maximizing tax rate at salience `s`. The optimal-tax formula
/// must hold to `10 * tol` at the returned rate.
pub fn s_optimal_tax(economy: &Economy, s: f64, tol: f64) -> Result<FrontierRow> {
    validate_salience(s)?;
    if !(tol > 0.0) {
        return Err(Error::NonPositiveParameter { name: "tol", value: tol });
    }
    let eps = economy.epsilon();
    let upper = admissible_tau_bound(s, eps)? - BOUND_MARGIN;
    let tau = bisect(
        |tau| foc_terms(economy, &Policy::new(tau, s)?).map(|t| t.normalized()),
        TAU_FLOOR,
        upper,
        tol * BRACKET_REFINEMENT,
        MAX_BISECTION_ITERATIONS,
    )?;
    let row = evaluate_row(economy, tau, s, upper)?;
    if row.formula_residual > 10.0 * tol {
        return Err(Error::ToleranceNotMet { residual: row.formula_residual, tol: 10.0 * tol });
    }
    Ok(row)
}

fn evaluate_row(economy: &Economy, tau: f64, s: f64, upper: f64) -> Result<FrontierRow> {
    let eps = economy.epsilon();
    let policy = Policy::new(tau, s)?;
    let profile = allocation(economy, &policy);
    let h_bar = profile.weights_or_err()?.h_bar;
    let decomposition = decompose(economy, &policy)?;
    let foc = foc_terms(economy, &policy)?;

    let mut h = SOC_RELATIVE_STEP * tau;
    if tau + h >= upper {
        h = 0.5 * (upper - tau);
    }
    let w = |t: f64| decompose(economy, &Policy::new(t, s)?).map(|d| d.welfare);
    let soc_value = (w(tau + h)? - 2.0 * decomposition.welfare + w(tau - h)?) / (h * h);

    Ok(FrontierRow {
        s,
        tau_star: tau,
        tau_perceived: s * tau,
        welfare: decomposition.welfare,
        xi: decomposition.xi,
        mu: decomposition.mu,
        equality: decomposition.equality,
        h_bar,
        revenue: profile.revenue,
        foc_residual: foc.normalized().abs(),
        soc_value,
        formula_residual: optimal_tax_formula_residual(eps, &policy, h_bar),
        order_preserving_margin: 1.0 / (1.0 + eps * (1.0 - s)) - tau,
        revenue_efficient_margin: 1.0 / (s * (1.0 + eps)) - tau,
        economy: economy.fingerprint(),
    })
}

/// Derivative-free cross-check: golden-section maximization of `W` over
/// the admissible interval. Accurate to roughly the square root of machine
/// precision because `W` is flat at its peak.
pub fn golden_section_tax(economy: &Economy, s: f64, tol: f64) -> Result<f64> {
    validate_salience(s)?;
    let upper = admissible_tau_bound(s, economy.epsilon())? - BOUND_MARGIN;
    let (tau, _) = golden_section_max(
        |tau| decompose(economy, &Policy::new(tau, s)?).map(|d| d.welfare),
        0.0,
        upper,
        tol,
        1000,
    )?;
    Ok(tau)
}

/// Checks that a salience grid is non-empty, strictly increasing and inside (0, 1].
pub fn validate_grid(s_grid: &[f64]) -> Result<()> {
    if s_grid.is_empty() {
        return Err(Error::InvalidGrid("salience grid is empty".into()));
    }
    if let Some(bad) = s_grid.iter().find(|s| !(**s > 0.0 && **s <= 1.0)) {
        return Err(Error::InvalidGrid(format!("salience {bad} outside (0, 1]")));
    }
    if s_grid.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidGrid("salience grid is not strictly increasing".into()));
    }
    Ok(())
}

/// Solves every grid point independently, keeping per-point failures.
/// Output order follows `s_grid` regardless of evaluation order.
pub fn solve_grid(economy: &Economy, s_grid: &[f64], tol: f64) -> Vec<Result<FrontierRow>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        s_grid.par_iter().map(|&s| s_optimal_tax(economy, s, tol)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        s_grid.iter().map(|&s| s_optimal_tax(economy, s, tol)).collect()
    }
}

/// The morally efficient frontier over `s_grid`.
pub fn frontier_sweep(economy: &Economy, s_grid: &[f64], tol: f64) -> Result<Vec<FrontierRow>> {
    validate_grid(s_grid)?;
    solve_grid(economy, s_grid, tol).into_iter().collect()
}

/// `n` evenly spaced salience values from `start` to `stop` inclusive.
pub fn linear_grid(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    stop
                } else {
                    start + (stop - start) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// A state whose welfare and honesty can be compared with another.
pub trait MoralState {
    fn salience(&self) -> f64;
    fn welfare(&self) -> f64;
    fn economy_fingerprint(&self) -> u64;
}

impl MoralState for FrontierRow {
    fn salience(&self) -> f64 {
        self.s
    }

    fn welfare(&self) -> f64 {
        self.welfare
    }

    fn economy_fingerprint(&self) -> u64 {
        self.economy
    }
}

/// Welfare of an arbitrary (not necessarily optimal) policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluatedPolicy {
    pub policy: Policy,
    pub welfare: f64,
    economy: u64,
}

impl EvaluatedPolicy {
    pub fn evaluate(economy: &Economy, policy: Policy) -> Result<Self> {
        Ok(Self {
            policy,
            welfare: decompose(economy, &policy)?.welfare,
            economy: economy.fingerprint(),
        })
    }
}

impl MoralState for EvaluatedPolicy {
    fn salience(&self) -> f64 {
        self.policy.s()
    }

    fn welfare(&self) -> f64 {
        self.welfare
    }

    fn economy_fingerprint(&self) -> u64 {
        self.economy
    }
}

/// `a` is at least as honest and as good for welfare as `b`, and strictly
/// better on one of the two.
pub fn morally_dominates(a: &impl MoralState, b: &impl MoralState) -> Result<bool> {
    if a.economy_fingerprint() != b.economy_fingerprint() {
        return Err(Error::EconomyMismatch);
    }
    let (sa, sb, wa, wb) = (a.salience(), b.salience(), a.welfare(), b.welfare());
    Ok((sa >= sb && wa > wb) || (wa >= wb && sa > sb))
}

/// Slope of the s-optimal tax at full salience.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauSlope {
    pub value: f64,
    /// The slope is known to be negative only for `rho <= 2`.
    pub sign_guaranteed: bool,
}

/// One-sided difference `(tau(1) - tau(1-h)) / h`.
pub fn tau_prime_at_one(economy: &Economy, h: f64, tol: f64) -> Result<TauSlope> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::DomainViolation(format!("step {h} outside (0, 1)")));
    }
    let top = s_optimal_tax(economy, 1.0, tol)?.tau_star;
    let below = s_optimal_tax(economy, 1.0 - h, tol)?.tau_star;
    Ok(TauSlope {
        value: (top - below) / h,
        sign_guaranteed: economy.rho() <= 2.0,
    })
}
