//! Exact probability calculus for the clique number of the information graph
//! over a chain of independent, possibly reinforced, Bernoulli edges.

mod audit;
mod closed_form;
mod distribution;
mod dp;
mod enumerate;
mod mask;
mod spec;

pub use audit::{audit_chain, audit_closed_form, AuditRecord, AuditSummary};
pub use closed_form::prob_clique_at_least_closed_form;
pub use distribution::{
    alpha_from_pmf, alpha_p, clique_distribution, clique_distribution_with_cap, enumerate_outcomes, gap_weight,
    CliqueDistribution, Engine,
};
pub use dp::prob_clique_at_least_dp;
pub use enumerate::DEFAULT_ENUMERATION_CAP;
pub use mask::{clique_number, deterministic_gap_bound, OutcomeMask};
pub use spec::{effective_edge_prob, family_probability, ChainSpec, GenerativeSequence};

pub(crate) use enumerate::check_cap as check_enumeration_cap;
