from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from scanmix.errors import Infeasible
from scanmix.transport import solve_transport

from oracles import vertex_optimum


masses = st.lists(st.integers(1, 6), min_size=1, max_size=3)


@settings(max_examples=150, deadline=None)
@given(masses, masses, st.data())
def test_matches_vertex_enumeration(a, b, data):
    # scale both sides to the same total
    sa, sb = sum(a), sum(b)
    supply = [Fraction(x, sa) for x in a]
    demand = [Fraction(x, sb) for x in b]
    cost = [[data.draw(st.integers(0, 3)) for _ in b] for _ in a]
    plan, total = solve_transport(supply, demand, cost)
    assert total == vertex_optimum(supply, demand, cost)
    for i, s in enumerate(supply):
        assert sum(f for (r, _), f in plan.items() if r == i) == s
    for j, d in enumerate(demand):
        assert sum(f for (_, c), f in plan.items() if c == j) == d
    assert all(f > 0 for f in plan.values())
    assert total == sum(cost[i][j] * f for (i, j), f in plan.items())


def test_unequal_totals():
    with pytest.raises(Infeasible):
        solve_transport([Fraction(1)], [Fraction(1, 2)], [[0]])


def test_degenerate_square():
    half = Fraction(1, 2)
    plan, total = solve_transport([half, half], [half, half], [[1, 0], [0, 1]])
    assert total == 0 and plan == {(0, 1): half, (1, 0): half}
