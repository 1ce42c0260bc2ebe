//! Social evaluation of an allocation: utilitarian welfare with isoelastic
//! outer utility, its equally distributed equivalent, and Atkinson's split
//! of the latter into equality times efficiency.

use serde::{Deserialize, Serialize};

use crate::behavior::{allocation, Policy};
use crate::economy::{mean, Economy};
use crate::error::{check_positive, Error, Result};
use crate::numeric::{step_for, FD_RELATIVE_STEP};

/// Isoelastic utility `c^(1-rho) / (1-rho)`, logarithmic at `rho = 1`.
pub fn outer_utility(c_hat: f64, rho: f64) -> Result<f64> {
    check_positive("rho", rho)?;
    if !(c_hat > 0.0) {
        return Err(Error::NonPositiveConsumption { index: 0, value: c_hat });
    }
    Ok(if rho == 1.0 {
        c_hat.ln()
    } else {
        c_hat.powf(1.0 - rho) / (1.0 - rho)
    })
}

/// Inverse of [`outer_utility`].
pub fn inverse_outer_utility(utility: f64, rho: f64) -> Result<f64> {
    check_positive("rho", rho)?;
    if rho == 1.0 {
        return Ok(utility.exp());
    }
    let base = (1.0 - rho) * utility;
    if !(base > 0.0) {
        return Err(Error::DomainViolation(format!(
            "utility {utility} is outside the range of u for rho = {rho}"
        )));
    }
    Ok(base.powf(1.0 / (1.0 - rho)))
}

pub fn marginal_utility(c_hat: f64, rho: f64) -> f64 {
    c_hat.powf(-rho)
}

/// `xi = E * mu`, with `W = u(xi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelfareDecomposition {
    /// Utilitarian welfare, the mean of `u(c_hat)`.
    #[serde(rename = "W")]
    pub welfare: f64,
    /// Equally distributed equivalent.
    pub xi: f64,
    /// Efficiency: mean equivalent consumption.
    pub mu: f64,
    #[serde(rename = "E")]
    pub equality: f64,
}

/// Atkinson decomposition of an arbitrary positive profile of equivalent
/// consumption, each entry carrying equal mass.
pub fn atkinson(c_hat: &[f64], rho: f64) -> Result<WelfareDecomposition> {
    check_positive("rho", rho)?;
    if c_hat.is_empty() {
        return Err(Error::EmptyEconomy);
    }
    if let Some((index, &value)) = c_hat.iter().enumerate().find(|(_, &c)| !(c > 0.0)) {
        return Err(Error::NonPositiveConsumption { index, value });
    }
    let mu = mean(c_hat);
    // equality is evaluated on c / mu so it is scale invariant to the last bit
    let (welfare, equality) = if rho == 1.0 {
        let w = c_hat.iter().map(|c| c.ln()).sum::<f64>() / c_hat.len() as f64;
        let e = (c_hat.iter().map(|c| (c / mu).ln()).sum::<f64>() / c_hat.len() as f64).exp();
        (w, e)
    } else {
        let p = 1.0 - rho;
        let w = c_hat.iter().map(|c| c.powf(p)).sum::<f64>() / (c_hat.len() as f64 * p);
        let m = c_hat.iter().map(|c| (c / mu).powf(p)).sum::<f64>() / c_hat.len() as f64;
        (w, m.powf(1.0 / p))
    };
    Ok(WelfareDecomposition {
        welfare,
        xi: equality * mu,
        mu,
        equality,
    })
}

/// Welfare, equally distributed equivalent, efficiency and equality under `policy`.
///
/// Fails with `NonPositiveConsumption` when some agent's equivalent
/// consumption is not positive, which can only happen off the
/// order-preserving region.
pub fn decompose(economy: &Economy, policy: &Policy) -> Result<WelfareDecomposition> {
    atkinson(&allocation(economy, policy).c_hat, economy.rho())
}

/// Closed-form partial derivatives of efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuPartials {
    pub dmu_ds: f64,
    pub dmu_dtau: f64,
    pub dmu_dsdtau: f64,
    pub dmu_dtaudtau: f64,
}

pub fn mu_partials(economy: &Economy, policy: &Policy) -> MuPartials {
    let eps = economy.epsilon();
    let (tau, s) = (policy.tau(), policy.s());
    let x = policy.perceived_retention();
    let z_bar = economy.mean_potential_income() * x.powf(eps);
    let v2_zs_ztau = eps * s * tau * z_bar / x;
    let wedge_zstau = s * tau * eps * (1.0 - s * tau * eps) * z_bar / (x * x);
    MuPartials {
        dmu_ds: -s * tau * tau * eps * z_bar / x,
        dmu_dtau: -s * s * tau * eps * z_bar / x,
        // -mu_{s tau} = mean(v'' z_s z_tau) - mean((1 - v') z_{s tau})
        dmu_dsdtau: -(v2_zs_ztau + wedge_zstau),
        dmu_dtaudtau: -eps * s * s * (1.0 - s * tau * eps) * z_bar / (x * x),
    }
}

/// `dW/ds = eps tau^2 / (1 - s tau) * ((1-s) mean(g z) - g_bar z_bar)`.
pub fn dw_ds(economy: &Economy, policy: &Policy) -> Result<f64> {
    let profile = allocation(economy, policy);
    let weights = profile.weights_or_err()?;
    let (tau, s) = (policy.tau(), policy.s());
    let gz = weights.g.iter().zip(&profile.z).map(|(g, z)| g * z).sum::<f64>() / profile.z.len() as f64;
    let k = economy.epsilon() * tau * tau / policy.perceived_retention();
    Ok(k * ((1.0 - s) * gz - weights.g_bar * profile.z_bar))
}

/// Finite-difference partial derivatives of equality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EqualityPartials {
    pub de_ds: f64,
    pub de_dtau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Axis {
    Tau,
    Salience,
}

/// Derivative of `f(policy)` along one policy coordinate: central where both
/// neighbours are evaluable, one-sided at the edge of the domain.
pub(crate) fn policy_derivative<F>(policy: &Policy, axis: Axis, rel: f64, mut f: F) -> Result<f64>
where
    F: FnMut(&Policy) -> Result<f64>,
{
    let (tau, s) = (policy.tau(), policy.s());
    let at = |delta: f64| match axis {
        Axis::Tau => Policy::new(tau + delta, s),
        Axis::Salience => Policy::new(tau, s + delta),
    };
    let h = match axis {
        Axis::Tau => step_for(tau, rel),
        Axis::Salience => step_for(s, rel),
    };
    let up = at(h).and_then(|p| f(&p));
    let down = at(-h).and_then(|p| f(&p));
    match (up, down) {
        (Ok(u), Ok(d)) => Ok((u - d) / (2.0 * h)),
        (Ok(u), Err(_)) => Ok((u - f(policy)?) / h),
        (Err(_), Ok(d)) => Ok((f(policy)? - d) / h),
        (Err(e), Err(_)) => Err(e),
    }
}

pub fn equality_partials(economy: &Economy, policy: &Policy) -> Result<EqualityPartials> {
    let e = |p: &Policy| decompose(economy, p).map(|d| d.equality);
    Ok(EqualityPartials {
        de_ds: policy_derivative(policy, Axis::Salience, FD_RELATIVE_STEP, e)?,
        de_dtau: policy_derivative(policy, Axis::Tau, FD_RELATIVE_STEP, e)?,
    })
}

/// Cumulative shares on the quantile grid `k / N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorenzCurve {
    pub quantiles: Vec<f64>,
    pub shares: Vec<f64>,
}

impl LorenzCurve {
    /// True when this curve lies weakly above `other` at every node.
    pub fn dominates(&self, other: &LorenzCurve) -> bool {
        self.shares.len() == other.shares.len()
            && self.shares.iter().zip(&other.shares).all(|(a, b)| *a >= *b - 1e-15)
    }
}

pub fn lorenz(profile: &[f64]) -> Result<LorenzCurve> {
    if profile.is_empty() {
        return Err(Error::EmptyEconomy);
    }
    if let Some((index, &value)) = profile.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
        return Err(Error::NonPositiveConsumption { index, value });
    }
    let total: f64 = profile.iter().sum();
    let n = profile.len() as f64;
    let mut running = 0.0;
    let mut shares: Vec<f64> = profile
        .iter()
        .map(|v| {
            running += v;
            running / total
        })
        .collect();
    *shares.last_mut().unwrap() = 1.0;
    Ok(LorenzCurve {
        quantiles: (1..=profile.len()).map(|k| k as f64 / n).collect(),
        shares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn utility_examples() {
        assert!((outer_utility(2.0, 2.0).unwrap() + 0.5).abs() < 1e-15);
        assert_eq!(outer_utility(1.0, 1.0).unwrap(), 0.0);
        assert!(outer_utility(0.0, 2.0).is_err());
        assert!(inverse_outer_utility(1.0, 2.0).is_err());
    }

    #[test]
    fn inverse_utility_round_trip() {
        for &rho in &[0.1, 1.0, 3.0] {
            for &c in &[0.01, 0.37, 1.0, 5.5, 42.0, 100.0] {
                let back = inverse_outer_utility(outer_utility(c, rho).unwrap(), rho).unwrap();
                assert!((back - c).abs() <= 1e-12 * c, "rho {rho} c {c} back {back}");
            }
        }
    }

    #[test]
    fn two_point_log_profile() {
        // geometric mean sqrt(3) over arithmetic mean 2
        let d = atkinson(&[1.0, 3.0], 1.0).unwrap();
        assert!((d.xi - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(d.mu, 2.0);
        assert!((d.equality - 0.8660254037844386).abs() < 1e-15);
        assert!((d.welfare - 3f64.ln() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn constant_profile_has_full_equality() {
        for &rho in &[0.3, 1.0, 4.0] {
            let d = atkinson(&[2.5; 7], rho).unwrap();
            assert!((d.equality - 1.0).abs() < 1e-15);
            assert!((d.xi - d.mu).abs() < 1e-14);
        }
    }

    #[test]
    fn xi_matches_inverse_utility_of_welfare() {
        let c = [0.5, 1.0, 2.0, 9.0];
        for &rho in &[0.1, 1.0, 2.5] {
            let d = atkinson(&c, rho).unwrap();
            let xi = inverse_outer_utility(d.welfare, rho).unwrap();
            assert!((xi - d.xi).abs() < 1e-12 * xi);
            assert!(d.xi <= d.mu);
        }
    }

    #[test]
    fn rejects_non_positive_profile() {
        assert!(matches!(
            atkinson(&[1.0, -0.1], 2.0),
            Err(Error::NonPositiveConsumption { index: 1, .. })
        ));
    }

    #[test]
    fn lorenz_examples() {
        let l = lorenz(&[1.0, 3.0]).unwrap();
        assert_eq!(l.quantiles, vec![0.5, 1.0]);
        assert_eq!(l.shares, vec![0.25, 1.0]);
        let flat = lorenz(&[2.0; 4]).unwrap();
        for (q, s) in flat.quantiles.iter().zip(&flat.shares) {
            assert!((q - s).abs() < 1e-15);
        }
        assert!(flat.dominates(&lorenz(&[1.0, 2.0, 3.0, 4.0]).unwrap()));
        assert!(lorenz(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn zero_tax_mu_partials_vanish() {
        let e = Economy::from_wages(vec![1.0, 2.0, 4.0], 0.5, 2.0).unwrap();
        let m = mu_partials(&e, &Policy::new(0.0, 0.6).unwrap());
        assert_eq!(m.dmu_ds, 0.0);
        assert_eq!(m.dmu_dtau, 0.0);
    }
}
