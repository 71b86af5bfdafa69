//! Sequential greedy maximization of monotone submodular functions under a
//! partition matroid, run over a chain of agents whose messages may be lost.
//!
//! * [`submodular`]: oracles, the partition matroid, centralized and
//!   failure-aware decentralized greedy, and an exhaustive optimum for small
//!   instances.
//! * [`chain`]: the clique-number distribution of the information graph and
//!   the probabilistic optimality gap `α_p`, by three independent engines.
//! * [`reinforce`]: where to spend extra transmission trials.
//! * [`coverage`]: the sensor-deployment benchmark and its Monte Carlo driver.

pub mod chain;
pub mod coverage;
mod error;
pub mod expectation;
pub mod reinforce;
pub mod submodular;

pub use error::{Error, Result};
