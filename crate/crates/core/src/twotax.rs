//! Translation between one misperceived tax and a salient income tax paired
//! with a less salient consumption tax.
//!
//! Agents keep `(1 - tau_l) / (1 + tau_c)` of each unit earned but believe
//! they keep `(1 - tau_l) / (1 + s_c tau_c)`. Any single-tax state `(tau, s)`
//! with enough salience is reproduced exactly by some such pair.

use serde::{Deserialize, Serialize};

use crate::behavior::Policy;
use crate::economy::{mean, Economy};
use crate::error::{Error, Result};
use crate::welfare::{atkinson, WelfareDecomposition};

/// Values of `tau_l` this close below zero are rounding at the feasibility boundary.
const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoTaxPolicy {
    pub tau_l: f64,
    pub tau_c: f64,
    pub s_c: f64,
}

impl TwoTaxPolicy {
    pub fn new(tau_l: f64, tau_c: f64, s_c: f64) -> Result<Self> {
        if !(tau_l >= 0.0 && tau_l < 1.0) {
            return Err(Error::DomainViolation(format!("income tax {tau_l} outside [0, 1)")));
        }
        if !(tau_c >= 0.0 && tau_c.is_finite()) {
            return Err(Error::DomainViolation(format!("consumption tax {tau_c} is not a finite non-negative rate")));
        }
        check_consumption_salience(s_c)?;
        Ok(Self { tau_l, tau_c, s_c })
    }

    /// `(1 - tau_l) / (1 + tau_c)`, what is actually kept of a marginal unit.
    pub fn effective_retention(&self) -> f64 {
        (1.0 - self.tau_l) / (1.0 + self.tau_c)
    }

    /// `(1 - tau_l) / (1 + s_c tau_c)`, what agents believe they keep.
    pub fn perceived_retention(&self) -> f64 {
        (1.0 - self.tau_l) / (1.0 + self.s_c * self.tau_c)
    }
}

fn check_consumption_salience(s_c: f64) -> Result<()> {
    if s_c > 0.0 && s_c < 1.0 {
        Ok(())
    } else {
        Err(Error::DomainViolation(format!("consumption-tax salience {s_c} outside (0, 1)")))
    }
}

/// Lowest salience a pair can achieve for effective rate `tau`: the point
/// where the income tax hits zero.
pub fn feasibility_bound(tau: f64, s_c: f64) -> f64 {
    s_c / (1.0 - tau + s_c * tau)
}

pub fn to_two_tax(tau: f64, s: f64, s_c: f64) -> Result<TwoTaxPolicy> {
    check_consumption_salience(s_c)?;
    if !(tau >= 0.0 && tau < 1.0) {
        return Err(Error::DomainViolation(format!("tax rate {tau} outside [0, 1)")));
    }
    Policy::new(tau, s)?;
    let bound = feasibility_bound(tau, s_c);
    if s < bound {
        return Err(Error::InfeasibleSalienceTarget { s, bound });
    }
    let denominator = (1.0 - tau) - s_c * (1.0 - s * tau);
    let tau_c = (tau - s * tau) / denominator;
    let mut tau_l = tau - (1.0 - tau) * tau_c;
    if tau_l < 0.0 && tau_l > -BOUNDARY_SLACK {
        tau_l = 0.0;
    }
    TwoTaxPolicy::new(tau_l, tau_c, s_c)
}

/// The single-tax state `(tau, s)` implied by a pair. A zero effective rate
/// is reported as fully salient.
pub fn from_two_tax(policy: &TwoTaxPolicy) -> Result<(f64, f64)> {
    let p = TwoTaxPolicy::new(policy.tau_l, policy.tau_c, policy.s_c)?;
    let tau = (p.tau_l + p.tau_c) / (1.0 + p.tau_c);
    if tau == 0.0 {
        return Ok((0.0, 1.0));
    }
    let s = (1.0 - p.perceived_retention()) / tau;
    Ok((tau, s))
}

/// Outcome of the two-tax economy computed from its own budget constraint
/// `(1 + tau_c) c = (1 - tau_l) z + G`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTaxAllocation {
    pub z: Vec<f64>,
    pub c: Vec<f64>,
    pub c_hat: Vec<f64>,
    pub z_bar: f64,
    pub c_bar: f64,
    /// Lump-sum transfer `G = (tau_l + tau_c) z_bar`.
    pub transfer: f64,
}

pub fn two_tax_allocation(economy: &Economy, policy: &TwoTaxPolicy) -> TwoTaxAllocation {
    let eps = economy.epsilon();
    let believed = policy.perceived_retention();
    let z: Vec<f64> = economy
        .wages()
        .iter()
        .map(|w| w.powf(1.0 + eps) * believed.powf(eps))
        .collect();
    let z_bar = mean(&z);
    let transfer = (policy.tau_l + policy.tau_c) * z_bar;
    let c: Vec<f64> = z
        .iter()
        .map(|zi| ((1.0 - policy.tau_l) * zi + transfer) / (1.0 + policy.tau_c))
        .collect();
    // effort cost eps/(1+eps) * (z/w)^(1+1/eps)
    let c_hat = z
        .iter()
        .zip(&c)
        .zip(economy.wages())
        .map(|((zi, ci), w)| ci - eps / (1.0 + eps) * (zi / w).powf(1.0 + 1.0 / eps))
        .collect();
    TwoTaxAllocation {
        c_bar: mean(&c),
        z,
        c,
        c_hat,
        z_bar,
        transfer,
    }
}

pub fn decompose_two_tax(economy: &Economy, policy: &TwoTaxPolicy) -> Result<WelfareDecomposition> {
    atkinson(&two_tax_allocation(economy, policy).c_hat, economy.rho())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_salience_needs_no_consumption_tax() {
        let p = to_two_tax(0.25, 1.0, 0.5).unwrap();
        assert_eq!(p.tau_c, 0.0);
        assert_eq!(p.tau_l, 0.25);
        assert_eq!(from_two_tax(&p).unwrap(), (0.25, 1.0));
    }

    #[test]
    fn boundary_salience_is_a_pure_consumption_tax() {
        let (tau, s_c) = (0.3, 0.5);
        let p = to_two_tax(tau, feasibility_bound(tau, s_c), s_c).unwrap();
        assert!(p.tau_l.abs() < 1e-12);
    }

    #[test]
    fn below_boundary_is_infeasible() {
        let bound = feasibility_bound(0.3, 0.5);
        assert!(matches!(
            to_two_tax(0.3, bound - 1e-6, 0.5),
            Err(Error::InfeasibleSalienceTarget { .. })
        ));
        assert!(bound < 1.0);
    }

    #[test]
    fn worked_example_retention_identities() {
        let p = to_two_tax(0.3, 0.8, 0.5).unwrap();
        assert!((p.effective_retention() - 0.7).abs() < 1e-12);
        assert!((p.perceived_retention() - (1.0 - 0.8 * 0.3)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_consumption_salience() {
        assert!(matches!(to_two_tax(0.3, 0.8, 1.0), Err(Error::DomainViolation(_))));
        assert!(matches!(TwoTaxPolicy::new(0.1, 0.1, 0.0), Err(Error::DomainViolation(_))));
    }
}
