//! Agent responses to a linear tax `tau` perceived as `s * tau`.
//!
//! With effort cost `v(z) = (z/w)^(1+1/eps) / (1+1/eps)` an agent earns
//! `z = w^(1+eps) (1 - s*tau)^eps` and ends up with equivalent consumption
//! `c_hat = a(tau, s) * w^(1+eps) + tau * z_bar`, an affine function of the
//! wage term. Everything here uses these closed forms.

use serde::{Deserialize, Serialize};

use crate::economy::{mean, Economy};
use crate::error::{check_positive, Error, Result};

/// An actual marginal tax rate together with its salience.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Policy {
    tau: f64,
    s: f64,
}

impl Policy {
    /// Requires `s` in (0, 1], `tau >= 0` and a perceived rate `s*tau < 1`.
    pub fn new(tau: f64, s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::DomainViolation(format!("salience {s} outside (0, 1]")));
        }
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::DomainViolation(format!("tax rate {tau} is negative or not finite")));
        }
        if s * tau >= 1.0 {
            return Err(Error::DomainViolation(format!(
                "perceived rate s*tau = {} is not below 1",
                s * tau
            )));
        }
        Ok(Self { tau, s })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn perceived_rate(&self) -> f64 {
        self.s * self.tau
    }

    pub fn perceived_retention(&self) -> f64 {
        1.0 - self.s * self.tau
    }

    /// Strictly below `1 / (1 + eps(1-s))`.
    pub fn is_order_preserving(&self, epsilon: f64) -> bool {
        self.tau < 1.0 / (1.0 + epsilon * (1.0 - self.s))
    }

    /// At or below the revenue-maximizing rate.
    pub fn is_revenue_efficient(&self, epsilon: f64) -> bool {
        self.tau <= 1.0 / (self.s * (1.0 + epsilon))
    }

    pub fn is_admissible(&self, epsilon: f64) -> bool {
        self.is_order_preserving(epsilon) && self.is_revenue_efficient(epsilon)
    }
}

/// Income chosen by an agent with wage `w`.
pub fn income(w: f64, policy: &Policy, epsilon: f64) -> f64 {
    w.powf(1.0 + epsilon) * policy.perceived_retention().powf(epsilon)
}

/// Welfare weights `g_i = c_hat_i^(-rho)` and the statistics built on them.
#[derive(Debug, Clone, PartialEq)]
pub struct WelfareWeights {
    pub g: Vec<f64>,
    pub g_bar: f64,
    /// `mean(g z) / (g_bar z_bar)`
    pub h_bar: f64,
}

/// Everything the population does and gets under one policy.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationProfile {
    pub policy: Policy,
    pub z: Vec<f64>,
    pub z_bar: f64,
    pub c: Vec<f64>,
    pub c_hat: Vec<f64>,
    /// Coefficient on `w^(1+eps)` in `c_hat`.
    pub slope: f64,
    /// Lump-sum rebate `tau * z_bar`, the intercept of `c_hat`.
    pub intercept: f64,
    pub revenue: f64,
    /// `None` when some `c_hat_i <= 0`, where marginal utility is undefined.
    pub weights: Option<WelfareWeights>,
}

impl AllocationProfile {
    pub fn mean_c_hat(&self) -> f64 {
        mean(&self.c_hat)
    }

    /// First node with non-positive equivalent consumption, if any.
    pub fn first_non_positive(&self) -> Option<(usize, f64)> {
        self.c_hat.iter().copied().enumerate().find(|&(_, c)| c <= 0.0)
    }

    pub fn weights_or_err(&self) -> Result<&WelfareWeights> {
        match (&self.weights, self.first_non_positive()) {
            (Some(w), _) => Ok(w),
            (None, Some((index, value))) => Err(Error::NonPositiveConsumption { index, value }),
            (None, None) => unreachable!("weights are only dropped for non-positive consumption"),
        }
    }
}

/// Incomes, consumption and equivalent consumption of every node.
pub fn allocation(economy: &Economy, policy: &Policy) -> AllocationProfile {
    let eps = economy.epsilon();
    let (tau, s) = (policy.tau(), policy.s());
    let scale = policy.perceived_retention().powf(eps);
    let z: Vec<f64> = economy.potential_income().iter().map(|p| p * scale).collect();
    let z_bar = economy.mean_potential_income() * scale;
    let slope = scale * (1.0 - tau * (1.0 + eps * (1.0 - s))) / (1.0 + eps);
    let intercept = tau * z_bar;
    let c: Vec<f64> = z.iter().map(|zi| (1.0 - tau) * zi + intercept).collect();
    let c_hat: Vec<f64> = economy
        .potential_income()
        .iter()
        .map(|p| slope * p + intercept)
        .collect();

    let weights = if c_hat.iter().all(|&c| c > 0.0) {
        let rho = economy.rho();
        let g: Vec<f64> = c_hat.iter().map(|c| c.powf(-rho)).collect();
        let g_bar = mean(&g);
        let gz = g.iter().zip(&z).map(|(g, z)| g * z).sum::<f64>() / z.len() as f64;
        Some(WelfareWeights {
            h_bar: gz / (g_bar * z_bar),
            g,
            g_bar,
        })
    } else {
        None
    };

    AllocationProfile {
        policy: *policy,
        revenue: intercept,
        z,
        z_bar,
        c,
        c_hat,
        slope,
        intercept,
        weights,
    }
}

/// Closed-form responses of income to salience and the tax rate.
#[derive(Debug, Clone, PartialEq)]
pub struct BehavioralDerivatives {
    pub dz_ds: Vec<f64>,
    pub dzbar_ds: f64,
    pub dz_dtau: Vec<f64>,
    pub dzbar_dtau: f64,
    /// `s(1-tau)/(1-s*tau)`: the factor by which misperception scales the
    /// elasticity of income with respect to the actual retention rate.
    pub alpha: f64,
}

pub fn behavioral_derivatives(economy: &Economy, policy: &Policy) -> BehavioralDerivatives {
    let eps = economy.epsilon();
    let (tau, s) = (policy.tau(), policy.s());
    let x = policy.perceived_retention();
    let scale = x.powf(eps);
    let per_s = -eps * tau / x;
    let per_tau = -eps * s / x;
    let z_bar = economy.mean_potential_income() * scale;
    BehavioralDerivatives {
        dz_ds: economy.potential_income().iter().map(|p| per_s * p * scale).collect(),
        dzbar_ds: per_s * z_bar,
        dz_dtau: economy.potential_income().iter().map(|p| per_tau * p * scale).collect(),
        dzbar_dtau: per_tau * z_bar,
        alpha: s * (1.0 - tau) / x,
    }
}

fn check_salience(s: f64) -> Result<f64> {
    check_positive("s", s)?;
    if s > 1.0 {
        return Err(Error::DomainViolation(format!("salience {s} above 1")));
    }
    Ok(s)
}

/// Revenue-maximizing tax rate `1 / (s(1+eps))`.
pub fn laffer_rate(s: f64, epsilon: f64) -> Result<f64> {
    check_salience(s)?;
    check_positive("epsilon", epsilon)?;
    Ok(1.0 / (s * (1.0 + epsilon)))
}

/// Supremum of order-preserving tax rates, `1 / (1 + eps(1-s))`.
pub fn order_preserving_bound(s: f64, epsilon: f64) -> Result<f64> {
    check_salience(s)?;
    check_positive("epsilon", epsilon)?;
    Ok(1.0 / (1.0 + epsilon * (1.0 - s)))
}

/// Upper end of the admissible tax interval: the smaller of the Laffer rate
/// and the order-preserving bound.
pub fn admissible_tau_bound(s: f64, epsilon: f64) -> Result<f64> {
    Ok(laffer_rate(s, epsilon)?.min(order_preserving_bound(s, epsilon)?))
}

/// Salience above which lowering salience at any fixed `tau > 0` makes
/// every agent better off: `1 - z_bar / z_top`.
pub fn pareto_threshold(economy: &Economy) -> f64 {
    let top = *economy.potential_income().last().expect("economy is non-empty");
    1.0 - economy.mean_potential_income() / top
}

/// `d c_hat_i / d s = eps tau^2 / (1 - s tau) * (z_i (1-s) - z_bar)`.
pub fn dchat_ds(economy: &Economy, policy: &Policy) -> Vec<f64> {
    let eps = economy.epsilon();
    let (tau, s) = (policy.tau(), policy.s());
    let x = policy.perceived_retention();
    let scale = x.powf(eps);
    let z_bar = economy.mean_potential_income() * scale;
    let k = eps * tau * tau / x;
    economy
        .potential_income()
        .iter()
        .map(|p| k * (p * scale * (1.0 - s) - z_bar))
        .collect()
}

/// `d c_hat_i / d tau = (z_bar - z_i) - k z_bar + (1-s) k z_i`, `k = s tau eps / (1 - s tau)`.
pub fn dchat_dtau(economy: &Economy, policy: &Policy) -> Vec<f64> {
    let eps = economy.epsilon();
    let (tau, s) = (policy.tau(), policy.s());
    let x = policy.perceived_retention();
    let scale = x.powf(eps);
    let z_bar = economy.mean_potential_income() * scale;
    let k = s * tau * eps / x;
    economy
        .potential_income()
        .iter()
        .map(|p| {
            let z = p * scale;
            (z_bar - z) - k * z_bar + (1.0 - s) * k * z
        })
        .collect()
}
