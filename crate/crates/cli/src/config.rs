//! Run configuration: an optional TOML file overlaid by command-line flags.

use std::path::Path;
use std::str::FromStr;

use salience_core::economy::{calibrate_lognormal, economy_from_wages, CalibrationSpec, Economy, Truncation};
use salience_core::optimizer::{linear_grid, DEFAULT_TOL};
use serde::Deserialize;

use crate::error::CliError;

/// `start:stop:count`, evenly spaced and inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub const REPLICATION: GridSpec = GridSpec { start: 0.05, stop: 1.0, count: 50 };

    pub fn values(&self) -> Vec<f64> {
        linear_grid(self.start, self.stop, self.count)
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("grid '{text}' is not of the form start:stop:count"));
        };
        let number = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("grid bound '{p}': {e}"));
        let count = count.trim().parse::<usize>().map_err(|e| format!("grid count '{count}': {e}"))?;
        if count == 0 {
            return Err("grid count must be positive".into());
        }
        Ok(GridSpec { start: number(start)?, stop: number(stop)?, count })
    }
}

/// The `[calibration]` table; omitted keys take the reference values.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationTable {
    pub mean_income: Option<f64>,
    pub mld: Option<f64>,
    pub lower_trunc: Option<f64>,
    pub upper_trunc: Option<f64>,
    pub anchor_tau: Option<f64>,
    pub anchor_s: Option<f64>,
    pub n_agents: Option<usize>,
    pub truncation: Option<Truncation>,
}

/// Keys accepted in a configuration file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub epsilon: Option<f64>,
    pub rho: Option<f64>,
    pub wages: Option<Vec<f64>>,
    pub calibration: Option<CalibrationTable>,
    pub tol: Option<f64>,
    pub s_grid: Option<String>,
    /// Inequality-aversion values swept by `replicate`.
    pub rhos: Option<Vec<f64>>,
    /// Elasticities swept by `replicate`.
    pub epsilons: Option<Vec<f64>>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EconomySource {
    Wages(Vec<f64>),
    Calibration(CalibrationTable),
}

/// Flag values that override the configuration file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub epsilon: Option<f64>,
    pub rho: Option<f64>,
    pub tol: Option<f64>,
    pub s_grid: Option<GridSpec>,
    pub seed: Option<u64>,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: EconomySource,
    pub epsilon: f64,
    pub rho: f64,
    pub tol: f64,
    pub s_grid: GridSpec,
    pub rhos: Vec<f64>,
    pub epsilons: Vec<f64>,
    /// Recorded for reproducibility; node separation is deterministic, so
    /// nothing currently draws from it.
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, flags: Overrides) -> Result<Self, CliError> {
        let source = match (file.wages, file.calibration) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("give either `wages` or a [calibration] table, not both".into()))
            }
            (Some(w), None) => EconomySource::Wages(w),
            (None, c) => EconomySource::Calibration(c.unwrap_or_default()),
        };
        let s_grid = match (flags.s_grid, file.s_grid) {
            (Some(g), _) => g,
            (None, Some(text)) => text.parse().map_err(CliError::Config)?,
            (None, None) => GridSpec::REPLICATION,
        };
        let epsilon = flags.epsilon.or(file.epsilon).unwrap_or(0.25);
        let rho = flags.rho.or(file.rho).unwrap_or(1.0);
        let rhos = match flags.rho {
            Some(r) => vec![r],
            None => file.rhos.unwrap_or_else(|| vec![0.1, 1.0, 3.0]),
        };
        let epsilons = match flags.epsilon {
            Some(e) => vec![e],
            None => file.epsilons.unwrap_or_else(|| vec![0.25, 0.5]),
        };
        let tol = flags.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(CliError::Config(format!("tolerance {tol} must be positive")));
        }
        if rhos.is_empty() || epsilons.is_empty() {
            return Err(CliError::Config("`rhos` and `epsilons` must be nonempty".into()));
        }
        Ok(RunConfig {
            source,
            epsilon,
            rho,
            tol,
            s_grid,
            rhos,
            epsilons,
            seed: flags.seed.or(file.seed).unwrap_or(0),
        })
    }

    pub fn calibration_spec(&self, epsilon: f64, rho: f64) -> Option<CalibrationSpec> {
        let EconomySource::Calibration(t) = &self.source else {
            return None;
        };
        let r = CalibrationSpec::reference(epsilon, rho);
        Some(CalibrationSpec {
            mean_income: t.mean_income.unwrap_or(r.mean_income),
            mld: t.mld.unwrap_or(r.mld),
            lower_trunc: t.lower_trunc.unwrap_or(r.lower_trunc),
            upper_trunc: t.upper_trunc.unwrap_or(r.upper_trunc),
            anchor_tau: t.anchor_tau.unwrap_or(r.anchor_tau),
            anchor_s: t.anchor_s.unwrap_or(r.anchor_s),
            n_agents: t.n_agents.unwrap_or(r.n_agents),
            epsilon,
            rho,
            truncation: t.truncation.unwrap_or(r.truncation),
        })
    }

    pub fn economy_with(&self, epsilon: f64, rho: f64) -> Result<Economy, CliError> {
        let economy = match &self.source {
            EconomySource::Wages(w) => economy_from_wages(w.clone(), epsilon, rho)?,
            EconomySource::Calibration(_) => calibrate_lognormal(&self.calibration_spec(epsilon, rho).unwrap())?,
        };
        Ok(economy)
    }

    pub fn economy(&self) -> Result<Economy, CliError> {
        self.economy_with(self.epsilon, self.rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!("0.05:1:50".parse::<GridSpec>().unwrap(), GridSpec::REPLICATION);
        assert!("0.1:1".parse::<GridSpec>().is_err());
        assert!("0.1:1:0".parse::<GridSpec>().is_err());
        assert!("a:1:3".parse::<GridSpec>().is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: ConfigFile = toml::from_str("epsilon = 0.5\nrho = 2.0\nwages = [1.0, 2.0]\ntol = 1e-9").unwrap();
        let flags = Overrides { rho: Some(3.0), ..Default::default() };
        let cfg = RunConfig::resolve(file, flags).unwrap();
        assert_eq!((cfg.epsilon, cfg.rho, cfg.tol), (0.5, 3.0, 1e-9));
        assert_eq!(cfg.rhos, vec![3.0]);
        assert_eq!(cfg.source, EconomySource::Wages(vec![1.0, 2.0]));
    }

    #[test]
    fn both_sources_is_an_error() {
        let file: ConfigFile = toml::from_str("wages = [1.0]\n[calibration]\nmld = 0.5").unwrap();
        assert!(matches!(RunConfig::resolve(file, Overrides::default()), Err(CliError::Config(_))));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<ConfigFile>("epsilon = 0.5\nfoo = 1").is_err());
    }

    #[test]
    fn partial_calibration_falls_back_to_reference() {
        let file: ConfigFile = toml::from_str("[calibration]\nn_agents = 100").unwrap();
        let cfg = RunConfig::resolve(file, Overrides::default()).unwrap();
        let spec = cfg.calibration_spec(0.25, 1.0).unwrap();
        assert_eq!(spec.n_agents, 100);
        assert_eq!(spec.mean_income, 114_500.0);
    }
}
