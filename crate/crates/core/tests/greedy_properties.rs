use chaingreedy::chain::{clique_number, deterministic_gap_bound, OutcomeMask};
use chaingreedy::coverage::{coverage_value, generate_instance, CoverageOracle, InstanceParams};
use chaingreedy::submodular::{
    brute_force_optimum, decentralized_greedy, marginal_gain, sequential_greedy, GroundElement, GroundSet,
    PartitionMatroid, SetCoverageOracle, UtilityOracle,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
struct Instance {
    oracle: SetCoverageOracle,
    ground: GroundSet,
    matroid: PartitionMatroid,
}

/// Random weighted-coverage problem. `unit_caps` forces every capacity to 1.
fn instance_strategy(max_agents: usize, max_block: usize, unit_caps: bool) -> impl Strategy<Value = Instance> {
    let items = 2usize..10;
    (1..=max_agents, items).prop_flat_map(move |(n, items)| {
        let weights = prop::collection::vec(0.0f64..5.0, items);
        let blocks = prop::collection::vec(
            (1..=max_block).prop_flat_map(move |size| {
                (
                    prop::collection::vec(prop::collection::vec(0..items, 0..4), size),
                    0..=size,
                )
            }),
            n,
        );
        (weights, blocks).prop_map(move |(weights, blocks)| {
            let sizes: Vec<usize> = blocks.iter().map(|(c, _)| c.len()).collect();
            let caps: Vec<usize> = blocks.iter().map(|(_, k)| if unit_caps { 1 } else { *k }).collect();
            let covers = blocks.iter().enumerate().flat_map(|(a, (c, _))| {
                c.iter()
                    .enumerate()
                    .map(move |(j, items)| (GroundElement::new(a, j), items.clone()))
            });
            let oracle = SetCoverageOracle::new(weights, covers.collect::<Vec<_>>()).unwrap();
            let ground = GroundSet::from_sizes(&sizes);
            let matroid = PartitionMatroid::for_ground(caps, &ground).unwrap();
            Instance {
                oracle,
                ground,
                matroid,
            }
        })
    })
}

fn all_masks(n: usize) -> impl Iterator<Item = OutcomeMask> {
    let m = n - 1;
    (0..1u64 << m).map(move |i| OutcomeMask::from_index(m, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn greedy_is_feasible_and_half_optimal(inst in instance_strategy(4, 5, false)) {
        let opt = brute_force_optimum(&inst.oracle, &inst.matroid, &inst.ground).unwrap();
        let seq = sequential_greedy(&inst.oracle, &inst.matroid, &inst.ground).unwrap();
        prop_assert!(inst.matroid.is_independent(&inst.ground, &seq.union));
        prop_assert!(seq.value >= 0.5 * opt.value - 1e-9);
        prop_assert!((seq.value - inst.oracle.value(&seq.union).unwrap()).abs() < 1e-12);
        for mask in all_masks(inst.ground.num_blocks()) {
            let dec = decentralized_greedy(&inst.oracle, &inst.matroid, &inst.ground, &mask).unwrap();
            prop_assert!(inst.matroid.is_independent(&inst.ground, &dec.union));
            for (picks, (block, cap)) in dec.per_agent.iter().zip(inst.ground.blocks().iter().zip(inst.matroid.capacities())) {
                prop_assert!(picks.len() == *cap);
                prop_assert!(picks.iter().all(|e| block.contains(e)));
            }
        }
    }

    #[test]
    fn per_outcome_bound_holds(inst in instance_strategy(4, 5, true)) {
        let n = inst.ground.num_blocks();
        let opt = brute_force_optimum(&inst.oracle, &inst.matroid, &inst.ground).unwrap();
        for mask in all_masks(n) {
            let dec = decentralized_greedy(&inst.oracle, &inst.matroid, &inst.ground, &mask).unwrap();
            let bound = deterministic_gap_bound(n, clique_number(&mask)).unwrap();
            prop_assert!(dec.value >= bound * opt.value - 1e-9, "mask {mask}: {} < {bound} * {}", dec.value, opt.value);
        }
    }

    #[test]
    fn full_delivery_reduces_to_sequential(inst in instance_strategy(5, 5, false)) {
        let n = inst.ground.num_blocks();
        let seq = sequential_greedy(&inst.oracle, &inst.matroid, &inst.ground).unwrap();
        let dec = decentralized_greedy(&inst.oracle, &inst.matroid, &inst.ground, &OutcomeMask::all(n - 1, true)).unwrap();
        prop_assert_eq!(seq.per_agent, dec.per_agent);
    }

    #[test]
    fn naive_scan_call_count(inst in instance_strategy(5, 6, false)) {
        let seq = sequential_greedy(&inst.oracle, &inst.matroid, &inst.ground).unwrap();
        let expected: u64 = inst
            .ground
            .sizes()
            .iter()
            .zip(inst.matroid.capacities())
            .map(|(&size, &cap)| (1..=cap).map(|j| (size - j + 1) as u64).sum::<u64>())
            .sum();
        prop_assert_eq!(seq.oracle_calls, expected);
    }
}

#[test]
fn coverage_oracle_is_submodular_on_random_triples() {
    let inst = generate_instance(&InstanceParams::default(), 21).unwrap();
    let oracle = CoverageOracle::new(&inst);
    let all: Vec<GroundElement> = inst.ground().iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        // big ⊇ small, p outside big
        let mut big: Vec<GroundElement> = all.iter().copied().filter(|_| rng.random_bool(0.15)).collect();
        let outside: Vec<GroundElement> = all.iter().copied().filter(|e| !big.contains(e)).collect();
        let p = outside[rng.random_range(0..outside.len())];
        let small: Vec<GroundElement> = big.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        let g_small = marginal_gain(&oracle, p, &small).unwrap();
        let g_big = marginal_gain(&oracle, p, &big).unwrap();
        assert!(g_small >= g_big, "diminishing returns violated");
        assert!(g_big >= 0.0);
        big.push(p);
        assert_eq!(oracle.value(&big).unwrap(), coverage_value(&inst, &big).unwrap() as f64);
    }
}

#[test]
fn coverage_gain_counts_uncovered_points() {
    // three points covered only by the new sensor, the rest by the base set
    let inst = chaingreedy::coverage::CoverageInstance {
        seed: 0,
        points: vec![[0.0, 0.0], [0.5, 0.0], [0.0, 0.5], [10.0, 0.0], [10.5, 0.0]],
        locations: vec![[0.0, 0.0], [10.0, 0.0]],
        agent_locations: vec![vec![0], vec![1]],
        radii: vec![vec![1.0], vec![1.0]],
        kappas: vec![1, 1],
    };
    let oracle = CoverageOracle::new(&inst);
    let g = marginal_gain(&oracle, GroundElement::new(0, 0), &[GroundElement::new(1, 0)]).unwrap();
    assert_eq!(g, 3.0);
}
