//! Set-function oracles, the partition matroid and the greedy engines.

mod brute;
mod element;
mod greedy;
mod matroid;
mod oracle;

pub use brute::{brute_force_optimum, brute_force_optimum_with_cap, search_space_size, DEFAULT_BRUTE_FORCE_CAP};
pub use element::{GroundElement, GroundSet};
pub use greedy::{decentralized_greedy, sequential_greedy, SelectionResult};
pub use matroid::PartitionMatroid;
pub use oracle::{marginal_gain, ModularOracle, SetCoverageOracle, UtilityOracle};
