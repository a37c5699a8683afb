import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from scanmix.errors import DuplicateEdge, IndexOutOfRange, SelfLoop, StateSpaceTooLarge
from scanmix.spins import (
    BlockSchedule,
    SpinSystem,
    build_graph,
    complete_graph,
    cycle_graph,
    enumerate_configs,
    is_proper,
    make_block,
    path_graph,
    validate_schedule,
)


def brute_proper(graph, q):
    return [c for c in itertools.product(range(q), repeat=graph.n) if is_proper(graph, c)]


def test_graph_degrees():
    assert complete_graph(3).max_degree == 2
    assert build_graph(2, [(0, 1)]).max_degree == 1
    assert cycle_graph(4).max_degree == 2
    assert cycle_graph(4).edges == [(0, 1), (0, 3), (1, 2), (2, 3)]


@pytest.mark.parametrize("edges,err", [([(0, 0)], SelfLoop), ([(0, 1), (1, 0)], DuplicateEdge),
                                       ([(0, 5)], IndexOutOfRange)])
def test_graph_rejects(edges, err):
    with pytest.raises(err):
        build_graph(3, edges)


@pytest.mark.parametrize("graph,q,count", [(complete_graph(3), 3, 6), (path_graph(2), 2, 2), (path_graph(3), 3, 12)])
def test_colouring_counts(graph, q, count):
    assert len(enumerate_configs(SpinSystem(graph, q))) == count


def test_cap():
    with pytest.raises(StateSpaceTooLarge):
        SpinSystem(path_graph(10), 5, cap=1000).state_space()


@st.composite
def small_graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, edges)


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.integers(1, 4))
def test_enumeration_matches_filter(graph, q):
    assert enumerate_configs(SpinSystem(graph, q)) == brute_proper(graph, q)


@settings(max_examples=40, deadline=None)
@given(small_graphs(), st.integers(1, 3))
def test_omega_plus_masses(graph, q):
    space = SpinSystem(graph, q, restrict_to_proper=False).state_space()
    assert len(space) == q**graph.n
    legal = [p for c, p in zip(space.configs, space.pi) if is_proper(graph, c)]
    assert all(p == 0 for c, p in zip(space.configs, space.pi) if not is_proper(graph, c))
    if legal:
        assert sum(space.pi) == 1 and len(set(legal)) == 1


def test_boundaries():
    assert make_block(complete_graph(3), [0, 1]).boundary == (2,)
    assert make_block(cycle_graph(4), [0]).boundary == (1, 3)
    assert make_block(cycle_graph(4), [0, 1, 2, 3]).boundary == ()


def test_cover():
    g = cycle_graph(4)
    rep = validate_schedule(BlockSchedule.from_sites(g, [[0, 1], [2, 3]]), g)
    assert rep.covers and rep.total_updates == 4
    rep = validate_schedule(BlockSchedule.from_sites(g, [[0, 1]]), g)
    assert rep.uncovered == (2, 3)


def test_discrepancy_pairs_single_edge():
    space = SpinSystem(path_graph(2), 3).state_space()
    a, b = space.discrepancy_index_pairs(0)
    pairs = {(space.configs[s], space.configs[t]) for s, t in zip(a, b)}
    oracle = {(x, y) for x in space.configs for y in space.configs if x[0] != y[0] and x[1] == y[1]}
    assert pairs == oracle and len(pairs) == 6


def test_weights_validation():
    with pytest.raises(ValueError):
        SpinSystem(path_graph(2), 3, weights=(1, 0))
    assert SpinSystem(path_graph(2), 3, weights=("1/2", 2)).weights == (Fraction(1, 2), Fraction(2))
