//! The exogenous world: a wage distribution on an equal-mass quantile grid
//! plus the labor-supply elasticity and the inequality-aversion parameter.
//!
//! Agents are indexed by quantile nodes `k = 1..N`, node `k` standing for the
//! population quantile `(k - 0.5) / N` and carrying mass `1 / N`. Every
//! population integral in the crate is a plain mean over the nodes.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{check_positive, Error, Result};

/// Relative separation applied to consecutive tied nodes.
const TIE_JITTER: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Economy {
    wages: Vec<f64>,
    epsilon: f64,
    rho: f64,
    // w^(1+eps): income each agent earns when the perceived tax is zero
    potential: Vec<f64>,
    potential_mean: f64,
    fingerprint: u64,
}

impl Economy {
    /// Validates and freezes a wage list. Wages must already be strictly
    /// increasing; ties and inversions are rejected rather than sorted.
    pub fn from_wages(wages: Vec<f64>, epsilon: f64, rho: f64) -> Result<Self> {
        if wages.is_empty() {
            return Err(Error::EmptyEconomy);
        }
        check_positive("epsilon", epsilon)?;
        check_positive("rho", rho)?;
        for (index, &value) in wages.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveWage { index, value });
            }
            if index > 0 && value <= wages[index - 1] {
                return Err(Error::NonMonotoneWages { index });
            }
        }
        let potential: Vec<f64> = wages.iter().map(|w| w.powf(1.0 + epsilon)).collect();
        let potential_mean = mean(&potential);

        let mut hasher = DefaultHasher::new();
        epsilon.to_bits().hash(&mut hasher);
        rho.to_bits().hash(&mut hasher);
        for w in &wages {
            w.to_bits().hash(&mut hasher);
        }
        Ok(Self {
            wages,
            epsilon,
            rho,
            potential,
            potential_mean,
            fingerprint: hasher.finish(),
        })
    }

    /// Same wages, different inequality aversion.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::from_wages(self.wages.clone(), self.epsilon, rho)
    }

    pub fn wages(&self) -> &[f64] {
        &self.wages
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn len(&self) -> usize {
        self.wages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wages.is_empty()
    }

    /// A single-node economy has no inequality; equality is identically one.
    pub fn is_degenerate(&self) -> bool {
        self.wages.len() < 2
    }

    /// Per-node `w^(1+eps)`.
    pub fn potential_income(&self) -> &[f64] {
        &self.potential
    }

    /// Mean of `w^(1+eps)` over the population.
    pub fn mean_potential_income(&self) -> f64 {
        self.potential_mean
    }

    /// Mass carried by each node.
    pub fn node_weight(&self) -> f64 {
        1.0 / self.wages.len() as f64
    }

    /// Identity of (wages, epsilon, rho), used to refuse cross-economy comparisons.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

pub fn economy_from_wages(wages: Vec<f64>, epsilon: f64, rho: f64) -> Result<Economy> {
    Economy::from_wages(wages, epsilon, rho)
}

/// How the income quantiles are confined to the truncation bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// Quantiles of the untruncated log-normal, clamped to the bounds; tied
    /// nodes at a bound are separated by a relative jitter of `k * 1e-12`.
    #[default]
    Clamp,
    /// Quantiles of the log-normal conditioned on lying inside the bounds.
    Renormalize,
}

/// A log-normal income distribution observed at an anchor policy, from
/// which the wage distribution is backed out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationSpec {
    pub mean_income: f64,
    /// Mean log deviation of income.
    pub mld: f64,
    pub lower_trunc: f64,
    pub upper_trunc: f64,
    pub anchor_tau: f64,
    pub anchor_s: f64,
    pub n_agents: usize,
    pub epsilon: f64,
    pub rho: f64,
    #[serde(default)]
    pub truncation: Truncation,
}

impl CalibrationSpec {
    pub const DEFAULT_AGENTS: usize = 2000;

    /// US-household-like incomes: mean $114,500, MLD 0.616, truncated to
    /// [$1,000, $2,000,000], observed under a fully salient 25% tax.
    pub fn reference(epsilon: f64, rho: f64) -> Self {
        Self {
            mean_income: 114_500.0,
            mld: 0.616,
            lower_trunc: 1_000.0,
            upper_trunc: 2_000_000.0,
            anchor_tau: 0.25,
            anchor_s: 1.0,
            n_agents: Self::DEFAULT_AGENTS,
            epsilon,
            rho,
            truncation: Truncation::Clamp,
        }
    }

    /// Location of the underlying log-normal: `ln(mean) - MLD`.
    pub fn log_mean(&self) -> f64 {
        self.mean_income.ln() - self.mld
    }

    /// Scale of the underlying log-normal; the MLD of a log-normal is `sigma^2 / 2`.
    pub fn log_sd(&self) -> f64 {
        (2.0 * self.mld).sqrt()
    }

    fn validate(&self) -> Result<()> {
        check_positive("mean_income", self.mean_income)?;
        check_positive("mld", self.mld)?;
        check_positive("lower_trunc", self.lower_trunc)?;
        check_positive("upper_trunc", self.upper_trunc)?;
        check_positive("epsilon", self.epsilon)?;
        check_positive("rho", self.rho)?;
        if self.n_agents == 0 {
            return Err(Error::EmptyEconomy);
        }
        if self.lower_trunc >= self.upper_trunc {
            return Err(Error::InfeasibleCalibration(format!(
                "lower truncation {} is not below upper truncation {}",
                self.lower_trunc, self.upper_trunc
            )));
        }
        if !(self.lower_trunc < self.mean_income && self.mean_income < self.upper_trunc) {
            return Err(Error::InfeasibleCalibration(format!(
                "mean income {} outside the truncation support ({}, {})",
                self.mean_income, self.lower_trunc, self.upper_trunc
            )));
        }
        let perceived = self.anchor_s * self.anchor_tau;
        if !(self.anchor_tau >= 0.0 && self.anchor_s > 0.0 && self.anchor_s <= 1.0 && perceived < 1.0) {
            return Err(Error::InfeasibleCalibration(format!(
                "anchor policy (tau = {}, s = {}) outside the model domain",
                self.anchor_tau, self.anchor_s
            )));
        }
        Ok(())
    }
}

/// Incomes at the anchor policy, one per quantile node, strictly increasing.
pub fn anchor_incomes(spec: &CalibrationSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let normal = Normal::new(spec.log_mean(), spec.log_sd())
        .map_err(|e| Error::InfeasibleCalibration(e.to_string()))?;
    let (lo, hi) = (spec.lower_trunc, spec.upper_trunc);
    let n = spec.n_agents as f64;
    let (p_lo, p_hi) = (normal.cdf(lo.ln()), normal.cdf(hi.ln()));

    let mut incomes: Vec<f64> = (1..=spec.n_agents)
        .map(|k| {
            let q = (k as f64 - 0.5) / n;
            match spec.truncation {
                Truncation::Clamp => normal.inverse_cdf(q).exp().clamp(lo, hi),
                Truncation::Renormalize => normal.inverse_cdf(p_lo + q * (p_hi - p_lo)).exp().clamp(lo, hi),
            }
        })
        .collect();

    // the k-th repeat of a tied value becomes value * (1 + 1e-12)^k
    for k in 1..incomes.len() {
        if incomes[k] <= incomes[k - 1] {
            incomes[k] = incomes[k - 1] * (1.0 + TIE_JITTER);
        }
    }
    Ok(incomes)
}

/// Wages that generate `incomes` when agents face perceived retention `1 - s*tau`.
pub fn wages_from_incomes(incomes: &[f64], anchor_tau: f64, anchor_s: f64, epsilon: f64) -> Vec<f64> {
    let retention = (1.0 - anchor_s * anchor_tau).powf(epsilon);
    incomes
        .iter()
        .map(|z| (z / retention).powf(1.0 / (1.0 + epsilon)))
        .collect()
}

/// Builds the economy whose incomes at the anchor policy follow the
/// (truncated) log-normal described by `spec`.
pub fn calibrate_lognormal(spec: &CalibrationSpec) -> Result<Economy> {
    let incomes = anchor_incomes(spec)?;
    let wages = wages_from_incomes(&incomes, spec.anchor_tau, spec.anchor_s, spec.epsilon);
    Economy::from_wages(wages, spec.epsilon, spec.rho)
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
