use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("economy has no agents")]
    EmptyEconomy,
    #[error("wage at node {index} is not positive ({value})")]
    NonPositiveWage { index: usize, value: f64 },
    #[error("wages must be strictly increasing: node {index} does not exceed node {prev}", prev = .index - 1)]
    NonMonotoneWages { index: usize },
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("infeasible calibration: {0}")]
    InfeasibleCalibration(String),
    #[error("policy outside the model domain: {0}")]
    DomainViolation(String),
    #[error("equivalent consumption of node {index} is not positive ({value}); the policy is not order-preserving")]
    NonPositiveConsumption { index: usize, value: f64 },
    #[error("root not bracketed on [{lo:e}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    BracketFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("solver tolerance not met: residual {residual:e} exceeds {tol:e}")]
    ToleranceNotMet { residual: f64, tol: f64 },
    #[error("states were evaluated on different economies")]
    EconomyMismatch,
    #[error("equality level {target} outside the admissible range [{lo}, {hi}]")]
    EqualityOutOfRange { target: f64, lo: f64, hi: f64 },
    #[error("path leaves the admissible region at s = {s} (tau = {tau})")]
    PathLeavesAdmissibleRegion { s: f64, tau: f64 },
    #[error("effect decomposition does not add up: total {total}, substitution + income {sum}")]
    DecompositionMismatch { total: f64, sum: f64 },
    #[error("salience {s} is below the two-tax feasibility bound {bound}")]
    InfeasibleSalienceTarget { s: f64, bound: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    /// True for failures of an iterative solver, as opposed to bad inputs.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::BracketFailure { .. }
                | Error::ToleranceNotMet { .. }
                | Error::DecompositionMismatch { .. }
                | Error::PathLeavesAdmissibleRegion { .. }
        )
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveParameter { name, value })
    }
}
