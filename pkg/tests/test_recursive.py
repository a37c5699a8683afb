from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scanmix.coupling import BoundaryPair, RecursiveTreeCoupling, check_tree_block
from scanmix.coupling.influence import strategy_coupling
from scanmix.errors import NotATreeBlock
from scanmix.spins import SpinSystem, build_graph, cycle_graph, make_block, path_graph

from systems import boundary_pairs, padded_tree_block


def _coupling(graph, sites, x, y, q):
    system = SpinSystem(graph, q)
    block = make_block(graph, sites)
    return system, RecursiveTreeCoupling(system, BoundaryPair.from_configs(block, x, y))


def test_path_of_three_depth_two():
    # u - 0 - 1 - 2 - pendant, q=5, delta=2
    graph, sites, u = padded_tree_block("path", 3, 2)
    worst = Fraction(0)
    for x, y in boundary_pairs(graph, sites, u, 5):
        _, rc = _coupling(graph, sites, x, y, 5)
        worst = max(worst, rc.disagreement()[1])  # site 1 is at distance 2 from u
    assert worst <= Fraction(1, 9)


@pytest.mark.parametrize("kind,size,delta,q", [("path", 3, 2, 4), ("path", 3, 3, 5), ("star", 4, 3, 6)])
def test_joint_has_heatbath_marginals(kind, size, delta, q):
    graph, sites, u = padded_tree_block(kind, size, delta)
    for x, y in boundary_pairs(graph, sites, u, q, limit=30, seed=1):
        _, rc = _coupling(graph, sites, x, y, q)
        c = rc.coupling()  # checks both marginals exactly
        dis = rc.disagreement()
        assert all(c.disagreement(s) == dis[s] for s in sites)


def test_equal_colours_give_identity_below():
    graph, sites, u = padded_tree_block("path", 3, 2)
    x, y = next(iter(boundary_pairs(graph, sites, u, 4)))
    _, rc = _coupling(graph, sites, x, y, 4)
    for (c, cp), m in rc.site_coupling(rc.root, u, x[u], y[u]).items():
        if c == cp:
            sub = dict(rc._rec(1, rc.root, c, c))
            assert all(a == b for a, b in sub)


def test_sampler_matches_exact_disagreement():
    graph, sites, u = padded_tree_block("path", 3, 2)
    x, y = (0, 0, 0, 0, 1), (0, 0, 0, 1, 1)
    _, rc = _coupling(graph, sites, x, y, 4)
    rng = np.random.default_rng(5)
    n = 20_000
    hits = np.zeros(3)
    for _ in range(n):
        a, b = rc.sample(rng)
        hits += [a[s] != b[s] for s in sites]
    exact = rc.disagreement()
    for s in sites:
        p = float(exact[s])
        assert abs(hits[s] / n - p) <= 4 * np.sqrt(p * (1 - p) / n) + 1e-12


def test_block_shape_checks():
    g = cycle_graph(4)
    with pytest.raises(NotATreeBlock):
        check_tree_block(g, make_block(g, [0, 1, 2, 3]))
    with pytest.raises(NotATreeBlock):
        check_tree_block(g, make_block(g, [0, 2]))
    # site 3 touches both 0 and 2 of the path block {0, 1, 2}
    with pytest.raises(NotATreeBlock):
        check_tree_block(g, make_block(g, [0, 1, 2]), 3)
    assert check_tree_block(path_graph(3), make_block(path_graph(3), [1, 2]), 0) == 1


def test_strategy_uses_identity_off_boundary():
    g = path_graph(4)
    system = SpinSystem(g, 4)
    block = make_block(g, [0, 1])
    c, _ = strategy_coupling(system, "recursive-tree", block, (0, 1, 0, 1), (0, 1, 0, 2), 3)
    assert c.joint and all(a == b for a, b in c.joint)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("path", 4, 2), ("path", 3, 3), ("star", 4, 3)]), st.integers(0, 1), st.integers(0, 10**6))
def test_distance_decay_property(shape, extra, seed):
    kind, size, delta = shape
    q = delta + 2 + extra
    graph, sites, u = padded_tree_block(kind, size, delta)
    dist = graph.distances_from(u)
    for x, y in boundary_pairs(graph, sites, u, q, limit=3, seed=seed):
        _, rc = _coupling(graph, sites, x, y, q)
        for s, p in rc.disagreement().items():
            assert p <= Fraction(1, (q - delta) ** dist[s])
