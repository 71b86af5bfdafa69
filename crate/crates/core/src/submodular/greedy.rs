use crate::chain::OutcomeMask;
use crate::error::{Error, Result};
use crate::submodular::element::{GroundElement, GroundSet};
use crate::submodular::matroid::PartitionMatroid;
use crate::submodular::oracle::UtilityOracle;

/// Output of a greedy run or of the exhaustive optimum search.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    /// Picks of each chain position, in pick order.
    pub per_agent: Vec<Vec<GroundElement>>,
    /// Concatenation of `per_agent`.
    pub union: Vec<GroundElement>,
    /// `f(union)`.
    pub value: f64,
    /// Number of marginal-gain (or, for exhaustive search, set) evaluations.
    pub oracle_calls: u64,
}

impl SelectionResult {
    fn from_picks<O: UtilityOracle + ?Sized>(
        oracle: &O,
        per_agent: Vec<Vec<GroundElement>>,
        oracle_calls: u64,
    ) -> Result<Self> {
        let union: Vec<GroundElement> = per_agent.iter().flatten().copied().collect();
        let value = oracle.value(&union)?;
        Ok(Self {
            per_agent,
            union,
            value,
            oracle_calls,
        })
    }
}

/// Picks `capacity` elements of `block` one at a time, each the argmax of the
/// marginal gain against `prior` plus the picks so far. Ties go to the lowest
/// `local_id`; a zero best gain is still picked.
fn local_greedy<O: UtilityOracle + ?Sized>(
    oracle: &O,
    block: &[GroundElement],
    capacity: usize,
    prior: &[GroundElement],
    calls: &mut u64,
) -> Result<Vec<GroundElement>> {
    let mut picks: Vec<GroundElement> = Vec::with_capacity(capacity);
    let mut context = prior.to_vec();
    for _ in 0..capacity {
        let base = oracle.value(&context)?;
        let mut best: Option<(GroundElement, f64)> = None;
        for &s in block {
            if picks.contains(&s) {
                continue;
            }
            context.push(s);
            let gain = oracle.value(&context)? - base;
            context.pop();
            *calls += 1;
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((s, gain));
            }
        }
        let (s, _) = best.ok_or_else(|| Error::structure("candidate pool exhausted before capacity was reached"))?;
        picks.push(s);
        context.push(s);
    }
    Ok(picks)
}

/// Centralized sequential greedy: positions in order, each choosing its
/// capacity against everything chosen before it.
pub fn sequential_greedy<O: UtilityOracle + ?Sized>(
    oracle: &O,
    matroid: &PartitionMatroid,
    ground: &GroundSet,
) -> Result<SelectionResult> {
    matroid.check_ground(ground)?;
    let mut calls = 0;
    let mut chosen: Vec<GroundElement> = Vec::new();
    let mut per_agent = Vec::with_capacity(ground.num_blocks());
    for (block, &cap) in ground.blocks().iter().zip(matroid.capacities()) {
        let picks = local_greedy(oracle, block, cap, &chosen, &mut calls)?;
        chosen.extend_from_slice(&picks);
        per_agent.push(picks);
    }
    SelectionResult::from_picks(oracle, per_agent, calls)
}

/// Sequential greedy over a chain whose message deliveries follow `mask`.
///
/// Position `k + 1` receives what position `k` forwarded iff `mask[k]` is set;
/// otherwise it starts from the empty set. Each position forwards its received
/// set plus its own picks. Every position picks its full capacity either way.
pub fn decentralized_greedy<O: UtilityOracle + ?Sized>(
    oracle: &O,
    matroid: &PartitionMatroid,
    ground: &GroundSet,
    mask: &OutcomeMask,
) -> Result<SelectionResult> {
    matroid.check_ground(ground)?;
    let n = ground.num_blocks();
    if mask.len() != n.saturating_sub(1) {
        return Err(Error::structure(format!(
            "mask has {} bits for a chain of {n} agents",
            mask.len()
        )));
    }
    let mut calls = 0;
    let mut forwarded: Vec<GroundElement> = Vec::new();
    let mut per_agent = Vec::with_capacity(n);
    for (pos, (block, &cap)) in ground.blocks().iter().zip(matroid.capacities()).enumerate() {
        if pos > 0 && !mask.bit(pos - 1) {
            forwarded.clear();
        }
        let picks = local_greedy(oracle, block, cap, &forwarded, &mut calls)?;
        forwarded.extend_from_slice(&picks);
        per_agent.push(picks);
    }
    SelectionResult::from_picks(oracle, per_agent, calls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodular::oracle::{ModularOracle, SetCoverageOracle};

    fn e(a: usize, b: usize) -> GroundElement {
        GroundElement::new(a, b)
    }

    fn two_agent_additive() -> (ModularOracle, PartitionMatroid, GroundSet) {
        let o = ModularOracle::from_blocks(&[vec![5.0, 3.0], vec![4.0]]).unwrap();
        let g = GroundSet::from_sizes(&[2, 1]);
        let m = PartitionMatroid::for_ground(vec![1, 1], &g).unwrap();
        (o, m, g)
    }

    #[test]
    fn additive_two_agents() {
        let (o, m, g) = two_agent_additive();
        let r = sequential_greedy(&o, &m, &g).unwrap();
        assert_eq!(r.union, vec![e(0, 0), e(1, 0)]);
        assert_eq!(r.value, 9.0);
        assert_eq!(r.oracle_calls, 3);
    }

    #[test]
    fn zero_capacities_select_nothing() {
        let o = ModularOracle::from_blocks(&[vec![1.0, 2.0], vec![3.0]]).unwrap();
        let g = GroundSet::from_sizes(&[2, 1]);
        let m = PartitionMatroid::for_ground(vec![0, 0], &g).unwrap();
        let r = sequential_greedy(&o, &m, &g).unwrap();
        assert!(r.union.is_empty());
        assert_eq!(r.value, 0.0);
        assert_eq!(r.oracle_calls, 0);
    }

    #[test]
    fn full_capacity_takes_whole_block() {
        let o = ModularOracle::from_blocks(&[vec![1.0, 0.0, 2.0]]).unwrap();
        let g = GroundSet::from_sizes(&[3]);
        let m = PartitionMatroid::for_ground(vec![3], &g).unwrap();
        let mut r = sequential_greedy(&o, &m, &g).unwrap();
        r.union.sort();
        assert_eq!(r.union, g.block(0).to_vec());
        // 3 + 2 + 1 scans
        assert_eq!(r.oracle_calls, 6);
    }

    #[test]
    fn ties_go_to_lowest_local_id() {
        let o = ModularOracle::from_blocks(&[vec![0.0, 2.0, 2.0]]).unwrap();
        let g = GroundSet::from_sizes(&[3]);
        let m = PartitionMatroid::for_ground(vec![1], &g).unwrap();
        assert_eq!(sequential_greedy(&o, &m, &g).unwrap().union, vec![e(0, 1)]);
    }

    #[test]
    fn all_success_matches_sequential() {
        let (o, m, g) = two_agent_additive();
        let seq = sequential_greedy(&o, &m, &g).unwrap();
        let dec = decentralized_greedy(&o, &m, &g, &OutcomeMask::all(1, true)).unwrap();
        assert_eq!(seq.per_agent, dec.per_agent);
    }

    #[test]
    fn failed_edge_drops_prior() {
        // Three agents that all see the same two items; item 0 is heavier.
        let items = vec![3.0, 1.0];
        let covers = (0..3).flat_map(|a| [(e(a, 0), vec![0]), (e(a, 1), vec![1])]);
        let o = SetCoverageOracle::new(items, covers).unwrap();
        let g = GroundSet::from_sizes(&[2, 2, 2]);
        let m = PartitionMatroid::for_ground(vec![1, 1, 1], &g).unwrap();

        let r = decentralized_greedy(&o, &m, &g, &OutcomeMask::new(vec![true, false])).unwrap();
        // agent 2 saw agent 1's pick and goes elsewhere; agent 3 saw nothing
        assert_eq!(r.per_agent, vec![vec![e(0, 0)], vec![e(1, 1)], vec![e(2, 0)]]);
        assert_eq!(r.value, 4.0);

        let isolated = decentralized_greedy(&o, &m, &g, &OutcomeMask::all(2, false)).unwrap();
        assert_eq!(isolated.union, vec![e(0, 0), e(1, 0), e(2, 0)]);
        assert_eq!(isolated.value, 3.0);
    }

    #[test]
    fn mask_length_mismatch_is_structural() {
        let (o, m, g) = two_agent_additive();
        assert!(matches!(
            decentralized_greedy(&o, &m, &g, &OutcomeMask::all(3, true)),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn mismatched_matroid_is_structural() {
        let (o, _, g) = two_agent_additive();
        let m = PartitionMatroid::new(vec![1, 1], vec![3, 1]).unwrap();
        assert!(sequential_greedy(&o, &m, &g).is_err());
    }
}
