"""Tree blocks, the weighted-influence bounds for them, and the table of
certified (h, xi, q) choices.

All bounds are evaluated in exact rational arithmetic; whether a parameter
set works is decided by exact comparison with 1.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptyTree, NotATreeBlock, ParamOutOfRange, UnknownDelta
from .spins import BlockSchedule, Graph, build_graph


@dataclass(frozen=True)
class RootedTree:
    parent: tuple  # parent[root] == -1
    root: int

    @classmethod
    def from_graph(cls, graph: Graph, root: int = 0) -> "RootedTree":
        if graph.n == 0:
            raise EmptyTree("tree has no sites")
        if len(graph.edges) != graph.n - 1:
            raise NotATreeBlock(f"{len(graph.edges)} edges on {graph.n} sites is not a tree")
        parent = [-2] * graph.n
        parent[root] = -1
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for t in graph.adjacency[s]:
                if parent[t] == -2:
                    parent[t] = s
                    queue.append(t)
        if -2 in parent:
            raise NotATreeBlock("graph is not connected")
        return cls(tuple(parent), root)

    @classmethod
    def from_parents(cls, parent) -> "RootedTree":
        parent = tuple(int(p) for p in parent)
        roots = [s for s, p in enumerate(parent) if p == -1]
        if not parent:
            raise EmptyTree("tree has no sites")
        if len(roots) != 1:
            raise NotATreeBlock(f"need exactly one root, found {len(roots)}")
        tree = cls(parent, roots[0])
        tree.depths  # raises on cycles
        return tree

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def children(self) -> tuple:
        out = [[] for _ in self.parent]
        for s, p in enumerate(self.parent):
            if p >= 0:
                out[p].append(s)
        return tuple(tuple(c) for c in out)

    @property
    def bfs_order(self) -> list:
        order, queue = [], deque([self.root])
        kids = self.children
        while queue:
            s = queue.popleft()
            order.append(s)
            queue.extend(kids[s])
        return order

    @property
    def depths(self) -> tuple:
        order = self.bfs_order
        if len(order) != self.n:
            raise NotATreeBlock("parent array has a cycle or unreachable sites")
        d = [0] * self.n
        for s in order:
            if self.parent[s] >= 0:
                d[s] = d[self.parent[s]] + 1
        return tuple(d)

    @property
    def height(self) -> int:
        """Number of levels."""
        return max(self.depths) + 1

    @property
    def max_degree(self) -> int:
        return self.graph().max_degree

    def graph(self) -> Graph:
        return build_graph(self.n, [(s, p) for s, p in enumerate(self.parent) if p >= 0])


def complete_tree(branching: int, levels: int) -> RootedTree:
    """Complete ``branching``-ary tree with ``levels`` levels, BFS-numbered."""
    parent = [-1]
    frontier = [0]
    for _ in range(levels - 1):
        nxt = []
        for s in frontier:
            for _ in range(branching):
                parent.append(s)
                nxt.append(len(parent) - 1)
        frontier = nxt
    return RootedTree.from_parents(parent)


def build_tree_blocks(tree: RootedTree, h: int) -> BlockSchedule:
    """Blocks made of a site ``r`` at depth divisible by ``h`` and all its
    descendants at most ``h - 1`` edges below.

    A block whose subtree has fewer than ``h`` levels (and is not the root
    block) is merged into the block containing its root's parent.  Blocks
    are ordered by the breadth-first position of their roots.
    """
    if tree.n == 0:
        raise EmptyTree("tree has no sites")
    if h < 1:
        raise ParamOutOfRange("block height h must be at least 1")
    depth = tree.depths
    kids = tree.children
    order = tree.bfs_order
    below = [0] * tree.n  # levels in the subtree of s, minus one
    for s in reversed(order):
        below[s] = max((below[c] + 1 for c in kids[s]), default=0)
    owner = {}
    for s in order:
        if s == tree.root:
            owner[s] = s
            continue
        p = tree.parent[s]
        if depth[s] % h == 0 and below[s] + 1 >= h:
            owner[s] = s
        else:
            owner[s] = owner[p]
    roots = [s for s in order if owner[s] == s]
    members = {r: [] for r in roots}
    for s in range(tree.n):
        members[owner[s]].append(s)
    return BlockSchedule.from_sites(tree.graph(), [members[r] for r in roots])


def tree_weights(tree: RootedTree, xi) -> tuple:
    """Site weights ``xi ** depth``."""
    xi = Fraction(xi)
    return tuple(xi**d for d in tree.depths)


@dataclass(frozen=True)
class TreeBlockParams:
    delta: int
    q: int
    h: int
    xi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "xi", Fraction(self.xi))
        if self.delta < 2:
            raise ParamOutOfRange("delta must be at least 2")
        if self.q <= self.delta:
            raise ParamOutOfRange("q must exceed delta")
        if self.h < 1:
            raise ParamOutOfRange("h must be at least 1")
        if not 0 < self.xi < 1:
            raise ParamOutOfRange("xi must lie strictly between 0 and 1")


def _check_level(params: TreeBlockParams, d: int):
    if not 0 <= d <= params.h - 1:
        raise ParamOutOfRange(f"level d={d} outside 0..{params.h - 1}")


def _side_sum(params, d, upper):
    D, g, h, xi = params.delta, params.q - params.delta, params.h, params.xi
    return xi ** (h - d) * sum(
        (Fraction((D - 2) * (D - 1) ** (h - d + l - 1), g ** (h - d + 2 * l)) for l in range(1, upper + 1)),
        Fraction(0),
    )


def general_block_bound(params: TreeBlockParams, d: int) -> Fraction:
    """Weighted influence on a site ``d`` levels below the root of a
    non-root block."""
    _check_level(params, d)
    D, g, h, xi = params.delta, params.q - params.delta, params.h, params.xi
    return (
        1 / (Fraction(g) ** (d + 1) * xi ** (d + 1))
        + ((D - 1) * xi / g) ** (h - d)
        + _side_sum(params, d, d)
    )


def root_block_bound(params: TreeBlockParams, d: int) -> Fraction:
    """Weighted influence on a site ``d`` levels below the tree root, in the
    block containing the root."""
    _check_level(params, d)
    D, g, h, xi = params.delta, params.q - params.delta, params.h, params.xi
    if d == 0:
        return D * (D - 1) ** (h - 1) * xi**h / Fraction(g) ** h
    return (
        ((D - 1) * xi / g) ** (h - d)
        + (D - 1) ** h * xi ** (h - d) / Fraction(g) ** (h + d)
        + _side_sum(params, d, d - 1)
    )


@dataclass(frozen=True)
class BoundReport:
    params: TreeBlockParams
    general_bounds: tuple
    root_bounds: tuple
    max_bound: Fraction
    satisfied: bool


def evaluate_bounds(params: TreeBlockParams) -> BoundReport:
    gen = tuple(general_block_bound(params, d) for d in range(params.h))
    root = tuple(root_block_bound(params, d) for d in range(params.h))
    top = max(gen + root)
    return BoundReport(params, gen, root, top, all(b < 1 for b in gen + root))


@dataclass(frozen=True)
class TableRow:
    delta: int
    h: int
    xi: Fraction
    q: int            # least number of colours certified with blocks
    single_site: int  # ceil(delta + 2 sqrt(delta - 1))


TABLE1 = {
    row.delta: row
    for row in (
        TableRow(3, 15, Fraction(4, 7), 5, 6),
        TableRow(4, 3, Fraction(5, 11), 7, 8),
        TableRow(5, 12, Fraction(5, 11), 8, 9),
        TableRow(6, 3, Fraction(1, 2), 10, 11),
        TableRow(7, 7, Fraction(10, 23), 11, 12),
        TableRow(8, 13, Fraction(1, 3), 12, 14),
        TableRow(9, 85, Fraction(5, 19), 13, 15),
        TableRow(10, 5, Fraction(5, 19), 15, 16),
    )
}


def table_csv() -> str:
    lines = ["delta,h,xi,q,single_site"]
    for r in TABLE1.values():
        lines.append(f"{r.delta},{r.h},{r.xi},{r.q},{r.single_site}")
    return "\n".join(lines) + "\n"


def verify_table_row(delta: int, q: int | None = None) -> BoundReport:
    """Evaluate all 2h bounds for the tabulated (h, xi), at ``q`` colours
    (default: the tabulated least q)."""
    row = TABLE1.get(delta)
    if row is None:
        raise UnknownDelta(f"no table entry for delta={delta}")
    return evaluate_bounds(TreeBlockParams(delta, row.q if q is None else q, row.h, row.xi))


def single_site_threshold(delta: int) -> int:
    """Least integer q with q > delta + 2 sqrt(delta - 1)."""
    q = delta + 1
    while (q - delta) ** 2 <= 4 * (delta - 1):
        q += 1
    return q


def ceil_single_site(delta: int) -> int:
    """ceil(delta + 2 sqrt(delta - 1)), computed in integers."""
    r = math.isqrt(4 * (delta - 1))
    return delta + r + (0 if r * r == 4 * (delta - 1) else 1)


def xi_grid(den_cap: int) -> list:
    """Rationals in (0, 1) with denominator at most ``den_cap`` in lowest
    terms, ordered by denominator then numerator."""
    return [Fraction(a, b) for b in range(2, den_cap + 1) for a in range(1, b) if math.gcd(a, b) == 1]


def _float_max_bounds(delta, q, h, xis: np.ndarray) -> np.ndarray:
    D, g = delta, q - delta
    worst = np.zeros_like(xis)
    for d in range(h):
        side = lambda upper: xis ** (h - d) * sum(
            (D - 2) * (D - 1) ** (h - d + l - 1) / g ** (h - d + 2 * l) for l in range(1, upper + 1))
        gen = 1 / (g * xis) ** (d + 1) + ((D - 1) * xis / g) ** (h - d) + side(d)
        if d == 0:
            root = D * (D - 1) ** (h - 1) * xis**h / g**h
        else:
            root = ((D - 1) * xis / g) ** (h - d) + (D - 1) ** h * xis ** (h - d) / g ** (h + d) + side(d - 1)
        worst = np.maximum(worst, np.maximum(gen, root))
    return worst


def search_parameters(delta: int, q: int, h_range=range(1, 31), xi_denominator_cap: int = 64):
    """First (h, xi) satisfying every bound, scanning h ascending and xi by
    denominator then numerator; None if the grid has no solution (which
    proves nothing beyond the grid).

    Candidates are screened in floating point and confirmed exactly.
    """
    if q <= delta:
        return None
    grid = xi_grid(xi_denominator_cap)
    xs = np.array([float(x) for x in grid])
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        for h in h_range:
            worst = _float_max_bounds(delta, q, h, xs)
            for t in np.flatnonzero(~(worst >= 1 + 1e-9)):
                params = TreeBlockParams(delta, q, h, grid[t])
                if evaluate_bounds(params).satisfied:
                    return params
    return None
