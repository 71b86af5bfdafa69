//! Multi-sensor deployment benchmark: instances, the coverage utility and
//! Monte Carlo evaluation of the decentralized greedy.

mod instance;
mod montecarlo;
mod oracle;
mod permutation;

pub use instance::{generate_instance, CoverageInstance, InstanceParams};
pub use montecarlo::{
    best_known_optimum, monte_carlo, monte_carlo_with_optimum, reference_optimum, sample_mask, MonteCarloReport,
    OptimumKind, ReferenceOptimum, BEST_KNOWN_RESTARTS, EXACT_OPTIMUM_CAP,
};
pub use oracle::{coverage_value, CoverageOracle};
pub use permutation::{apply_permutation, chain_for_order, permute_blocks, AgentOrder};
