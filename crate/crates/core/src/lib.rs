//! Optimal linear income taxation when agents misperceive the tax.
//!
//! An [`economy::Economy`] is a discrete wage distribution with a labor
//! supply elasticity and an inequality aversion. A [`behavior::Policy`] is a
//! tax rate together with its salience, the share of the rate that agents
//! perceive. From these the crate computes incomes and money-metric
//! utilities, the Atkinson split of welfare into equality and efficiency,
//! the welfare-maximizing tax at each salience level, and the geometry of
//! the equality-efficiency frontier.

pub mod behavior;
pub mod economy;
pub mod error;
pub mod geometry;
pub mod numeric;
pub mod optimizer;
pub mod twotax;
pub mod welfare;

pub use behavior::Policy;
pub use economy::{calibrate_lognormal, CalibrationSpec, Economy, Truncation};
pub use error::{Error, Result};
