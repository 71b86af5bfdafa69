"""Quick check of the compiled module: build it with `maturin develop` first."""

import math

import chaingreedy as cg


def main():
    chain = cg.ChainSpec([0.5, 0.5])
    pmf = chain.clique_distribution()
    assert all(math.isclose(a, b) for a, b in zip(pmf, [0.25, 0.5, 0.25])), pmf
    alpha = chain.alpha_p()
    assert math.isclose(alpha, 0.25 / 4 + 0.5 / 3 + 0.25 / 2), alpha
    for engine in ("dp", "paper", "enumerate"):
        assert math.isclose(chain.alpha_p(engine), alpha, abs_tol=1e-12)

    assert cg.ChainSpec.homogeneous(10, 1.0).alpha_p() == 0.5
    assert cg.clique_number([True, False, True, True]) == 3
    assert cg.effective_edge_prob(0.5, 2) == 0.75
    assert math.isclose(cg.deterministic_gap_bound(4, 2), 0.25)

    baseline, per_edge, best, best_alpha = cg.ChainSpec([0.1, 0.3, 0.3, 0.3]).sweep()
    assert best == 2 and all(a >= baseline for a in per_edge), per_edge
    extra, edges, final = chain.greedy_reinforcement(3)
    assert sum(extra) == 3 and len(edges) == 3 and final > alpha

    sel = cg.greedy_modular([[3.0, 1.0], [2.0, 5.0]], [1, 1])
    assert sel.per_agent == [[(0, 0)], [(1, 1)]] and sel.value == 8.0
    lost = cg.greedy_modular([[3.0, 1.0], [2.0, 5.0]], [1, 1], mask=[False])
    assert lost.value == 8.0

    inst = cg.CoverageInstance.generate(seed=3, n=4, num_locations=10, locations_per_agent=4,
                                        num_points=300, kappa=1)
    again = cg.CoverageInstance.from_json(inst.to_json())
    assert again.to_json() == inst.to_json()
    full = inst.greedy()
    assert full.value == inst.greedy(mask=[True] * 3).value
    picks = [p for block in full.per_agent for p in block]
    assert inst.coverage(picks) == full.value
    opt, kind = inst.reference_optimum()
    assert kind == "exact" and opt >= full.value

    c = inst.chain(order="DCBA")
    report = inst.monte_carlo(c, iterations=500, seed=1, order="DCBA")
    assert report.empirical_gap >= report.alpha_p - 3 * report.gap_std_error
    print("ok:", report)


if __name__ == "__main__":
    main()
