"""Exact transportation simplex.

Supplies and demands are Fractions, costs are integers, so potentials and
reduced costs stay integral and only flows are rational.  Pivoting follows
Bland's rule under the lexicographic order of cells (smallest entering
cell with negative reduced cost, smallest leaving cell among ties), which
rules out cycling on degenerate bases.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction

from .errors import Infeasible


def northwest_corner(supply, demand):
    m, n = len(supply), len(demand)
    ra, rb = list(supply), list(demand)
    flows = {}
    i = j = 0
    while True:
        f = min(ra[i], rb[j])
        flows[(i, j)] = f
        ra[i] -= f
        rb[j] -= f
        if i == m - 1 and j == n - 1:
            break
        if ra[i] == 0 and i < m - 1:
            i += 1
        else:
            j += 1
    return flows


def _potentials(basis, m, n, cost):
    rows = [[] for _ in range(m)]
    cols = [[] for _ in range(n)]
    for i, j in basis:
        rows[i].append(j)
        cols[j].append(i)
    u = [None] * m
    v = [None] * n
    u[0] = 0
    queue = deque([("r", 0)])
    while queue:
        kind, k = queue.popleft()
        if kind == "r":
            for j in rows[k]:
                if v[j] is None:
                    v[j] = cost[k][j] - u[k]
                    queue.append(("c", j))
        else:
            for i in cols[k]:
                if u[i] is None:
                    u[i] = cost[i][k] - v[k]
                    queue.append(("r", i))
    return u, v, rows, cols


def _tree_path(rows, cols, start_row, end_col):
    """Basic cells on the tree path from row ``start_row`` to column ``end_col``."""
    parent = {("r", start_row): None}
    queue = deque([("r", start_row)])
    while queue:
        node = queue.popleft()
        if node == ("c", end_col):
            break
        kind, k = node
        nbrs = [("c", j) for j in rows[k]] if kind == "r" else [("r", i) for i in cols[k]]
        for nb in nbrs:
            if nb not in parent:
                parent[nb] = node
                queue.append(nb)
    path = []
    node = ("c", end_col)
    while parent[node] is not None:
        prev = parent[node]
        cell = (prev[1], node[1]) if prev[0] == "r" else (node[1], prev[1])
        path.append(cell)
        node = prev
    path.reverse()
    return path


def solve_transport(supply, demand, cost, max_iter: int = 100_000):
    """Minimum-cost transport plan.

    Parameters
    ----------
    supply, demand :
        Non-negative masses with equal totals.
    cost :
        ``cost[i][j]`` integer cost of moving a unit from source ``i`` to sink ``j``.

    Returns
    -------
    flows : dict
        ``{(i, j): mass}`` for cells carrying positive mass.
    total : Fraction
        Optimal cost.
    """
    supply = [Fraction(s) for s in supply]
    demand = [Fraction(d) for d in demand]
    if any(s < 0 for s in supply) or any(d < 0 for d in demand):
        raise Infeasible("negative mass")
    if sum(supply) != sum(demand):
        raise Infeasible(f"supply {sum(supply)} != demand {sum(demand)}")
    m, n = len(supply), len(demand)
    if m == 0 or n == 0:
        return {}, Fraction(0)
    flows = northwest_corner(supply, demand)
    for _ in range(max_iter):
        u, v, rows, cols = _potentials(flows, m, n, cost)
        entering = None
        for i in range(m):
            ci = cost[i]
            for j in range(n):
                if (i, j) not in flows and ci[j] - u[i] - v[j] < 0:
                    entering = (i, j)
                    break
            if entering:
                break
        if entering is None:
            break
        path = _tree_path(rows, cols, *entering)
        minus = path[0::2]
        plus = path[1::2]
        theta = min(flows[c] for c in minus)
        leaving = min(c for c in minus if flows[c] == theta)
        for c in minus:
            flows[c] -= theta
        for c in plus:
            flows[c] += theta
        del flows[leaving]
        flows[entering] = theta
    else:
        raise Infeasible("transport simplex did not terminate")
    plan = {c: f for c, f in flows.items() if f > 0}
    total = sum((cost[i][j] * f for (i, j), f in plan.items()), Fraction(0))
    return plan, total
