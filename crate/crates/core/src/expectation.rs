//! Exact expected utility of the decentralized greedy, by walking every
//! delivery outcome of the chain.

use rayon::prelude::*;

use crate::chain::{check_enumeration_cap, ChainSpec, OutcomeMask, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::submodular::{decentralized_greedy, GroundSet, PartitionMatroid, UtilityOracle};

#[derive(Debug, Clone, PartialEq)]
pub struct MaskOutcome {
    pub mask: OutcomeMask,
    pub probability: f64,
    pub clique_number: usize,
    pub value: f64,
}

/// Runs the decentralized greedy once per outcome mask, in mask-index order.
pub fn outcomes_by_mask<O: UtilityOracle + ?Sized>(
    oracle: &O,
    matroid: &PartitionMatroid,
    ground: &GroundSet,
    chain: &ChainSpec,
) -> Result<Vec<MaskOutcome>> {
    if chain.n() != ground.num_blocks() {
        return Err(Error::structure(format!(
            "chain of {} agents for {} blocks",
            chain.n(),
            ground.num_blocks()
        )));
    }
    check_enumeration_cap(chain, DEFAULT_ENUMERATION_CAP)?;
    let m = chain.num_edges();
    (0..1u64 << m)
        .into_par_iter()
        .map(|idx| {
            let mask = OutcomeMask::from_index(m, idx);
            let value = decentralized_greedy(oracle, matroid, ground, &mask)?.value;
            Ok(MaskOutcome {
                probability: mask.probability(chain)?,
                clique_number: mask.clique_number(),
                mask,
                value,
            })
        })
        .collect()
}

/// `E[f(S̄)]` over the chain's delivery outcomes.
pub fn expected_value<O: UtilityOracle + ?Sized>(
    oracle: &O,
    matroid: &PartitionMatroid,
    ground: &GroundSet,
    chain: &ChainSpec,
) -> Result<f64> {
    Ok(outcomes_by_mask(oracle, matroid, ground, chain)?
        .iter()
        .map(|o| o.probability * o.value)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodular::{GroundElement, SetCoverageOracle};

    #[test]
    fn two_agents_sharing_one_item() {
        let e = GroundElement::new;
        let o = SetCoverageOracle::new(
            vec![2.0, 1.0],
            [
                (e(0, 0), vec![0]),
                (e(0, 1), vec![1]),
                (e(1, 0), vec![0]),
                (e(1, 1), vec![1]),
            ],
        )
        .unwrap();
        let g = GroundSet::from_sizes(&[2, 2]);
        let m = PartitionMatroid::for_ground(vec![1, 1], &g).unwrap();
        let chain = ChainSpec::single_trial(vec![0.3]).unwrap();
        // failure: both take item 0 (value 2); success: 3
        let ev = expected_value(&o, &m, &g, &chain).unwrap();
        assert!((ev - (0.7 * 2.0 + 0.3 * 3.0)).abs() < 1e-12);
        let outcomes = outcomes_by_mask(&o, &m, &g, &chain).unwrap();
        assert_eq!(outcomes.len(), 2);
        assert_eq!(outcomes[1].clique_number, 2);
    }
}
