use crate::error::{Error, Result};
use crate::submodular::element::{GroundElement, GroundSet};
use crate::submodular::greedy::SelectionResult;
use crate::submodular::matroid::PartitionMatroid;
use crate::submodular::oracle::UtilityOracle;

pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 10_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of sets in which every block contributes exactly its capacity.
pub fn search_space_size(matroid: &PartitionMatroid) -> u128 {
    matroid
        .partition_sizes()
        .iter()
        .zip(matroid.capacities())
        .fold(1u128, |acc, (&n, &k)| acc.saturating_mul(binomial(n, k)))
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive maximizer over the matroid's bases.
///
/// Only sets that fill every block are scanned; for a monotone oracle one of
/// them is optimal among all independent sets. The first maximizer in
/// lexicographic order is returned.
pub fn brute_force_optimum<O: UtilityOracle + ?Sized>(
    oracle: &O,
    matroid: &PartitionMatroid,
    ground: &GroundSet,
) -> Result<SelectionResult> {
    brute_force_optimum_with_cap(oracle, matroid, ground, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_optimum_with_cap<O: UtilityOracle + ?Sized>(
    oracle: &O,
    matroid: &PartitionMatroid,
    ground: &GroundSet,
    cap: u128,
) -> Result<SelectionResult> {
    matroid.check_ground(ground)?;
    let size = search_space_size(matroid);
    if size > cap {
        return Err(Error::CapExceeded {
            what: "exhaustive optimum search",
            size,
            cap,
        });
    }

    let blocks = ground.blocks();
    let mut combos: Vec<Vec<usize>> = matroid.capacities().iter().map(|&k| (0..k).collect()).collect();
    let build = |combos: &[Vec<usize>]| -> Vec<Vec<GroundElement>> {
        combos
            .iter()
            .zip(blocks)
            .map(|(c, b)| c.iter().map(|&j| b[j]).collect())
            .collect()
    };

    let mut best_value = f64::NEG_INFINITY;
    let mut best = build(&combos);
    let mut evaluations = 0u64;
    loop {
        let picks = build(&combos);
        let flat: Vec<GroundElement> = picks.iter().flatten().copied().collect();
        let v = oracle.value(&flat)?;
        evaluations += 1;
        if v > best_value {
            best_value = v;
            best = picks;
        }
        // odometer over blocks, last block fastest
        let mut advanced = false;
        for b in (0..combos.len()).rev() {
            if next_combination(&mut combos[b], blocks[b].len()) {
                advanced = true;
                break;
            }
            combos[b] = (0..combos[b].len()).collect();
        }
        if !advanced {
            break;
        }
    }

    let union: Vec<GroundElement> = best.iter().flatten().copied().collect();
    Ok(SelectionResult {
        per_agent: best,
        union,
        value: best_value,
        oracle_calls: evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodular::oracle::ModularOracle;

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 2), 66);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
    }

    #[test]
    fn two_agent_additive_optimum() {
        let o = ModularOracle::from_blocks(&[vec![5.0, 3.0], vec![4.0]]).unwrap();
        let g = GroundSet::from_sizes(&[2, 1]);
        let m = PartitionMatroid::for_ground(vec![1, 1], &g).unwrap();
        let r = brute_force_optimum(&o, &m, &g).unwrap();
        assert_eq!(r.union, vec![GroundElement::new(0, 0), GroundElement::new(1, 0)]);
        assert_eq!(r.value, 9.0);
        assert_eq!(r.oracle_calls, 2);
    }

    #[test]
    fn zero_capacity_gives_empty_set() {
        let o = ModularOracle::from_blocks(&[vec![5.0, 3.0]]).unwrap();
        let g = GroundSet::from_sizes(&[2]);
        let m = PartitionMatroid::for_ground(vec![0], &g).unwrap();
        let r = brute_force_optimum(&o, &m, &g).unwrap();
        assert!(r.union.is_empty());
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn modular_optimum_is_per_block_top_k() {
        let o = ModularOracle::from_blocks(&[vec![1.0, 7.0, 3.0, 5.0], vec![2.0, 9.0, 4.0]]).unwrap();
        let g = GroundSet::from_sizes(&[4, 3]);
        let m = PartitionMatroid::for_ground(vec![2, 1], &g).unwrap();
        let r = brute_force_optimum(&o, &m, &g).unwrap();
        assert_eq!(r.per_agent[0], vec![GroundElement::new(0, 1), GroundElement::new(0, 3)]);
        assert_eq!(r.per_agent[1], vec![GroundElement::new(1, 1)]);
        assert_eq!(r.value, 21.0);
        assert_eq!(r.oracle_calls, 6 * 3);
    }

    #[test]
    fn refuses_oversized_search() {
        let g = GroundSet::from_sizes(&[12; 8]);
        let m = PartitionMatroid::for_ground(vec![2; 8], &g).unwrap();
        let o = ModularOracle::from_blocks(&vec![vec![1.0; 12]; 8]).unwrap();
        match brute_force_optimum(&o, &m, &g) {
            Err(Error::CapExceeded { size, .. }) => assert_eq!(size, 66u128.pow(8)),
            other => panic!("expected cap error, got {other:?}"),
        }
    }
}
