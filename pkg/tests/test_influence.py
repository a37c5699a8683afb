from fractions import Fraction

import pytest

from scanmix.coupling import discrepancy_pairs, rho_matrix, strategy_coupling
from scanmix.errors import IndexOutOfRange, StrategyShapeMismatch
from scanmix.ring import RingSystem, ring_influence
from scanmix.spins import BlockSchedule, SpinSystem, build_graph, complete_graph, cycle_graph, path_graph

from oracles import brute_heatbath, site_tv
from systems import K4_MINUS_E, PAW


def brute_rho(system, schedule, strategy):
    """rho over every pair of the enumerated domain (no pattern reduction)."""
    out = {}
    for k, block in enumerate(schedule.blocks):
        for i in range(system.n):
            best = {j: Fraction(0) for j in block.sites}
            for x, y in discrepancy_pairs(system, i):
                c, _ = strategy_coupling(system, strategy, block, x, y, i)
                for j in block.sites:
                    best[j] = max(best[j], c.disagreement(j))
            for j in block.sites:
                out[(k, i, j)] = best[j]
    return out


def test_discrepancy_pair_counts():
    assert len(discrepancy_pairs(SpinSystem(build_graph(1, []), 2), 0)) == 2
    assert len(discrepancy_pairs(SpinSystem(path_graph(2), 3), 0)) == 6
    with pytest.raises(IndexOutOfRange):
        discrepancy_pairs(SpinSystem(path_graph(2), 3), 2)


@pytest.mark.parametrize("graph,q,sched,strategy", [
    (cycle_graph(4), 4, "edges", "paper-edge"),
    (PAW, 5, "edges", "paper-edge"),
    (path_graph(4), 4, "edges", "min-hamming"),
    (complete_graph(3), 4, "sites", "maximal-site"),
])
@pytest.mark.parametrize("proper", [True, False])
def test_pattern_reduction_matches_full_enumeration(graph, q, sched, strategy, proper):
    system = SpinSystem(graph, q, restrict_to_proper=proper)
    schedule = BlockSchedule.edges(graph) if sched == "edges" else BlockSchedule.single_sites(graph)
    assert rho_matrix(system, schedule, strategy).rho == brute_rho(system, schedule, strategy)


@pytest.mark.parametrize("graph,q", [(path_graph(3), 4), (cycle_graph(4), 5), (K4_MINUS_E, 6)])
def test_maximal_site_rho_is_marginal_tv(graph, q):
    system = SpinSystem(graph, q)
    rep = rho_matrix(system, BlockSchedule.single_sites(graph), "maximal-site")
    for (i, j), v in rep.rho_hat().items():
        hat = Fraction(0)
        for x, y in discrepancy_pairs(system, i):
            d1 = brute_heatbath(graph, q, x, [j])
            d2 = brute_heatbath(graph, q, y, [j])
            hat = max(hat, site_tv(d1, d2, j))
        assert v == hat


@pytest.mark.parametrize("graph,delta", [(cycle_graph(4), 2), (cycle_graph(5), 2), (complete_graph(4), 3)])
def test_regular_graph_at_two_delta(graph, delta):
    q = 2 * delta
    rep = rho_matrix(SpinSystem(graph, q), BlockSchedule.edges(graph), "paper-edge")
    g = Fraction(1, q - delta)
    assert rep.alpha <= (delta - 1) * g + (delta - 1) * g * g == 1 - Fraction(1, delta**2)


def test_ring_parameters():
    rep = ring_influence(4, 3)
    assert rep.alpha == 1 and rep.alpha_weitz == Fraction(1, 2)
    assert all(rep.rho[(j, j, (j + 1) % 4)] == 1 for j in range(4))


def test_weights_rescale_sums():
    system = SpinSystem(path_graph(3), 5)
    sched = BlockSchedule.single_sites(system.graph)
    plain = rho_matrix(system, sched, "maximal-site")
    w = (Fraction(1), Fraction(2), Fraction(1))
    weighted = rho_matrix(system, sched, "maximal-site", weights=w)
    for (k, j), v in weighted.influence_sums.items():
        assert v == sum(w[i] / w[j] * plain.rho[(k, i, j)] for i in range(3))


def test_witness_attains_alpha():
    system = SpinSystem(cycle_graph(4), 4)
    rep = rho_matrix(system, BlockSchedule.edges(system.graph))
    x, y, k, i, j = rep.witness
    c, _ = strategy_coupling(system, "paper-edge", BlockSchedule.edges(system.graph).blocks[k], x, y, i)
    assert c.disagreement(j) == rep.rho[(k, i, j)] and rep.influence_sums[(k, j)] == rep.alpha


def test_float_backend_agrees():
    system = SpinSystem(cycle_graph(4), 4)
    sched = BlockSchedule.edges(system.graph)
    a = rho_matrix(system, sched).alpha
    b = rho_matrix(system, sched, exact=False).alpha
    assert abs(float(a) - b) < 1e-12


def test_shape_mismatch():
    system = SpinSystem(path_graph(3), 4)
    with pytest.raises(StrategyShapeMismatch):
        rho_matrix(system, BlockSchedule.single_sites(system.graph), "paper-edge")
    with pytest.raises(StrategyShapeMismatch):
        rho_matrix(system, BlockSchedule.edges(system.graph), "maximal-site")
    with pytest.raises(StrategyShapeMismatch):
        rho_matrix(system, BlockSchedule.edges(system.graph), "nonsense")


def test_recursive_tree_needs_single_contact():
    # in a triangle the third site touches both ends of every edge block
    system = SpinSystem(complete_graph(3), 4)
    with pytest.raises(StrategyShapeMismatch):
        rho_matrix(system, BlockSchedule.edges(system.graph), "recursive-tree")
