import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from scanmix.coupling import (
    edge_case_coupling,
    greedy_coupling,
    case_bounds,
    maximal_site_coupling,
    min_hamming_coupling,
    triangle_bound,
)
from scanmix.coupling.core import Coupling, hamming, two_step_coupling
from scanmix.coupling.influence import local_pairs
from scanmix.errors import MarginalMismatch, NotAnEdgeBlock, NotInS_i
from scanmix.spins import BlockSchedule, SpinSystem, build_graph, complete_graph, make_block, path_graph

from oracles import brute_heatbath, site_tv, vertex_optimum

F = Fraction


def test_identical_laws_disagree_nowhere():
    d = {0: F(1, 3), 1: F(2, 3)}
    c = maximal_site_coupling(d, d, 0)
    assert c.joint == {(0, 0): F(1, 3), (1, 1): F(2, 3)}


def test_maximal_site_tv_example():
    d1 = {0: F(1, 2), 1: F(1, 2)}
    d2 = {1: F(1, 2), 2: F(1, 2)}
    c = Coupling(greedy_coupling(d1, d2), d1, d2).check()
    assert sum(m for (a, b), m in c.joint.items() if a != b) == F(1, 2)


def test_path_centre_update_disagreement_is_marginal_tv():
    system = SpinSystem(path_graph(3), 3)
    block = make_block(system.graph, [1])
    x, y = (0, 1, 2), (1, 0, 2)  # 1-based (1,.,3) and (2,.,3)
    k = system.kernel(block)
    d1, d2 = k.distribution(x), k.distribution(y)
    assert d1 == brute_heatbath(system.graph, 3, x, [1])
    c = maximal_site_coupling(d1, d2, 1)
    assert c.disagreement(1) == site_tv(d1, d2, 1) == 1


def test_min_hamming_trivial_cases():
    d = {(0, 1): F(1, 2), (1, 0): F(1, 2)}
    assert min_hamming_coupling(d, d, (0, 1)).expected_hamming((0, 1)) == 0
    c = min_hamming_coupling({(0, 0): F(1)}, {(0, 1): F(1)}, (0, 1))
    assert c.expected_hamming((0, 1)) == 1


def test_min_hamming_edge_block_against_vertex_enumeration():
    # edge {0, 1}; site 0 sees boundary sites 2 and 3, site 1 sees 2
    g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    system = SpinSystem(g, 4)
    block = make_block(g, [0, 1])
    x, y = (0, 1, 2, 3), (1, 3, 2, 0)
    k = system.kernel(block)
    d1, d2 = k.distribution(x), k.distribution(y)
    k1, k2 = sorted(d1), sorted(d2)
    assert len(k1) <= 6 and len(k2) <= 6
    cost = [[hamming(a, b, (0, 1)) for b in k2] for a in k1]
    c = min_hamming_coupling(d1, d2, (0, 1))
    assert c.expected_hamming((0, 1)) == vertex_optimum([d1[a] for a in k1], [d2[b] for b in k2], cost)


laws = st.lists(st.integers(0, 5), min_size=3, max_size=3).filter(any)


def _law(ws, keys):
    t = sum(ws)
    return {k: F(w, t) for k, w in zip(keys, ws) if w}


@settings(max_examples=100, deadline=None)
@given(laws, laws)
def test_greedy_is_maximal(a, b):
    d1, d2 = _law(a, range(3)), _law(b, range(3))
    c = Coupling(greedy_coupling(d1, d2), d1, d2).check()
    tv = sum(abs(d1.get(k, 0) - d2.get(k, 0)) for k in range(3)) / 2
    assert sum(m for (x, y), m in c.joint.items() if x != y) == tv


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=4, max_size=4).filter(any),
       st.lists(st.integers(0, 4), min_size=4, max_size=4).filter(any))
def test_min_hamming_beats_independent_and_two_step(a, b):
    keys = list(itertools.product(range(2), repeat=2))
    d1, d2 = _law(a, keys), _law(b, keys)
    best = min_hamming_coupling(d1, d2, (0, 1)).expected_hamming((0, 1))
    indep = sum(p * r * hamming(x, y, (0, 1)) for x, p in d1.items() for y, r in d2.items())
    two = two_step_coupling(d1, d2, 0, (0, 1)).check()
    assert best <= indep and best <= two.expected_hamming((0, 1))


def test_marginal_check_rejects():
    with pytest.raises(MarginalMismatch):
        Coupling({(0, 0): F(1)}, {0: F(1, 2), 1: F(1, 2)}, {0: F(1)}).check()
    c = Coupling({(0, 0): 0.5 + 1e-13, (1, 1): 0.5 - 1e-13}, {0: 0.5, 1: 0.5}, {0: 0.5, 1: 0.5})
    c.check(tol=1e-12)
    with pytest.raises(MarginalMismatch):
        c.check()


# ---- edge cases ----

def _sweep(graph, q):
    system = SpinSystem(graph, q)
    delta = graph.max_degree
    for block in BlockSchedule.edges(graph).blocks:
        for i in range(graph.n):
            for x, y in local_pairs(system, block, i):
                yield system, block, i, x, y, edge_case_coupling(system, x, y, i, block), delta


K4_MINUS_E = build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
WHEEL = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)])
# triangle with a pendant on two of its corners
BULL = build_graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])


@pytest.mark.parametrize("graph,q", [(K4_MINUS_E, 5), (complete_graph(4), 5), (WHEEL, 6), (BULL, 5), (BULL, 7)])
def test_edge_cases_respect_their_bounds(graph, q):
    seen = Counter()
    for system, block, i, x, y, ec, delta in _sweep(graph, q):
        seen[ec.case] += 1
        bj, bjp = case_bounds(ec.case, q, delta)
        assert ec.disagreement(ec.j) <= bj
        assert ec.disagreement(ec.j_prime) <= bjp
        if ec.case == 0:
            assert ec.disagreement(ec.j) == ec.disagreement(ec.j_prime) == 0
        if i in system.graph.adjacency[block.sites[0]] and i in system.graph.adjacency[block.sites[1]]:
            tb = triangle_bound(q, delta)
            assert ec.disagreement(ec.j) <= tb and ec.disagreement(ec.j_prime) <= tb
    assert {0, 3} <= set(seen)


def test_all_cases_occur_on_bull():
    seen = {ec.case for *_, ec, _ in _sweep(BULL, 5)}
    assert seen == {0, 1, 3, 4, 5, 6}


def test_edge_coupling_rejects_bad_input():
    system = SpinSystem(path_graph(3), 3)
    with pytest.raises(NotAnEdgeBlock):
        edge_case_coupling(system, (0, 1, 0), (1, 1, 0), 0, make_block(system.graph, [0, 2]))
    with pytest.raises(NotInS_i):
        edge_case_coupling(system, (0, 1, 0), (1, 2, 0), 0, make_block(system.graph, [1, 2]))
