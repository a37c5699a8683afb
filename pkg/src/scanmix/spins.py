"""Graphs, configurations, blocks and exact enumeration of configuration spaces.

Configurations are plain tuples of 0-based spins.  They are rendered 1-based
only at the I/O boundary (see :mod:`scanmix.fileio`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DuplicateEdge, IndexOutOfRange, SelfLoop, StateSpaceTooLarge

Configuration = tuple  # tuple[int, ...], spins in 0..q-1

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple  # tuple of sorted neighbour tuples

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def neighbours(self, i: int) -> tuple:
        return self.adjacency[i]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def distances_from(self, source: int) -> dict[int, int]:
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for v in self.adjacency[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return dist


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple undirected graph on sites ``0..n-1``.

    Raises IndexOutOfRange, SelfLoop or DuplicateEdge on malformed input.
    """
    if n < 0:
        raise IndexOutOfRange(f"negative site count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for edge in edges:
        u, v = (int(e) for e in edge)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at site {u}")
        if v in adj[u]:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def config_index(config: Sequence[int], q: int) -> int:
    """Position of ``config`` in the lexicographic order of all ``q**n`` vectors."""
    idx = 0
    for s in config:
        idx = idx * q + s
    return idx


def is_proper(graph: Graph, config: Sequence[int]) -> bool:
    return all(config[u] != config[v] for u, v in graph.edges)


@dataclass(frozen=True)
class Block:
    sites: tuple
    boundary: tuple

    def __contains__(self, site) -> bool:
        return site in self.sites

    def __len__(self) -> int:
        return len(self.sites)


def block_boundary(sites: Iterable[int], graph: Graph) -> tuple:
    """Sites adjacent to, but not inside, ``sites``."""
    inside = set()
    for s in sites:
        if not 0 <= s < graph.n:
            raise IndexOutOfRange(f"site {s} outside 0..{graph.n - 1}")
        inside.add(s)
    out = {v for s in inside for v in graph.adjacency[s] if v not in inside}
    return tuple(sorted(out))


def make_block(graph: Graph, sites: Iterable[int]) -> Block:
    sites = tuple(sorted(set(sites)))
    if not sites:
        raise ValueError("a block needs at least one site")
    return Block(sites, block_boundary(sites, graph))


@dataclass(frozen=True)
class BlockSchedule:
    """Ordered blocks; the order is the scan order."""

    blocks: tuple
    n: int

    @classmethod
    def from_sites(cls, graph: Graph, site_lists: Iterable[Iterable[int]]) -> "BlockSchedule":
        return cls(tuple(make_block(graph, s) for s in site_lists), graph.n)

    @classmethod
    def single_sites(cls, graph: Graph) -> "BlockSchedule":
        return cls.from_sites(graph, [[i] for i in range(graph.n)])

    @classmethod
    def edges(cls, graph: Graph, edges=None) -> "BlockSchedule":
        return cls.from_sites(graph, edges if edges is not None else graph.edges)

    @property
    def covers(self) -> bool:
        return set().union(*(b.sites for b in self.blocks)) == set(range(self.n))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def blocks_containing(self, j: int) -> list[int]:
        """Indices of blocks holding site ``j`` (its b(j) is the length)."""
        return [k for k, b in enumerate(self.blocks) if j in b.sites]


@dataclass(frozen=True)
class CoverReport:
    covered: tuple
    uncovered: tuple
    total_updates: int

    @property
    def covers(self) -> bool:
        return not self.uncovered


def validate_schedule(schedule: BlockSchedule, graph: Graph) -> CoverReport:
    covered = set()
    total = 0
    for b in schedule.blocks:
        covered.update(b.sites)
        total += len(b.sites)
    uncovered = tuple(i for i in range(graph.n) if i not in covered)
    return CoverReport(tuple(sorted(covered)), uncovered, total)


@dataclass(frozen=True)
class StateSpace:
    """An enumerated domain plus its target distribution as exact masses."""

    configs: tuple
    pi: tuple  # Fractions aligned with configs
    q: int
    tag: str  # "omega" or "omega+"

    @cached_property
    def index(self) -> dict:
        return {c: k for k, c in enumerate(self.configs)}

    def __len__(self) -> int:
        return len(self.configs)

    @cached_property
    def _pairs(self) -> dict:
        return {}

    def discrepancy_index_pairs(self, i: int):
        """Index arrays ``(a, b)`` of all ordered pairs in the domain that
        differ exactly at site ``i``."""
        import numpy as np

        hit = self._pairs.get(i)
        if hit is not None:
            return hit
        index = self.index
        a_idx, b_idx = [], []
        for a, x in enumerate(self.configs):
            y = list(x)
            for c in range(self.q):
                if c == x[i]:
                    continue
                y[i] = c
                b = index.get(tuple(y))
                if b is not None:
                    a_idx.append(a)
                    b_idx.append(b)
        hit = self._pairs[i] = (np.array(a_idx, dtype=np.int64), np.array(b_idx, dtype=np.int64))
        return hit

    def pi_vector(self, exact: bool = False):
        import numpy as np

        if exact:
            return np.array(self.pi, dtype=object)
        return np.array([float(p) for p in self.pi])


@dataclass(frozen=True)
class SpinSystem:
    """Proper q-colourings of ``graph`` with uniform target distribution.

    ``restrict_to_proper`` picks the chain's domain: the proper colourings
    (default) or every assignment, in which case improper configurations
    carry zero target mass.
    """

    graph: Graph
    q: int
    weights: tuple = None
    restrict_to_proper: bool = True
    cap: int = DEFAULT_CAP
    _kernels: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be at least 1")
        if self.weights is None:
            object.__setattr__(self, "weights", tuple(Fraction(1) for _ in range(self.graph.n)))
        else:
            w = tuple(Fraction(x) for x in self.weights)
            if len(w) != self.graph.n:
                raise ValueError("one weight per site required")
            if any(x <= 0 for x in w):
                raise ValueError("weights must be positive")
            object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def max_degree(self) -> int:
        return self.graph.max_degree

    @property
    def unconstrained(self) -> bool:
        """True when every assignment is in the domain."""
        return not self.restrict_to_proper

    def is_legal(self, config) -> bool:
        return is_proper(self.graph, config)

    def kernel(self, block: Block):
        from .dynamics import HeatBathKernel

        k = self._kernels.get(block)
        if k is None:
            k = self._kernels[block] = HeatBathKernel(self, block)
        return k

    @cached_property
    def _space(self) -> StateSpace:
        configs = tuple(enumerate_configs(self))
        if self.restrict_to_proper:
            p = Fraction(1, len(configs)) if configs else Fraction(0)
            pi = tuple(p for _ in configs)
            return StateSpace(configs, pi, self.q, "omega")
        legal = [c for c in configs if self.is_legal(c)]
        p = Fraction(1, len(legal)) if legal else Fraction(0)
        pi = tuple(p if self.is_legal(c) else Fraction(0) for c in configs)
        return StateSpace(configs, pi, self.q, "omega+")

    def state_space(self) -> StateSpace:
        return self._space


def _check_cap(q: int, n: int, cap: int):
    if q**n > cap:
        raise StateSpaceTooLarge(f"q^n = {q}^{n} exceeds cap {cap}")


def enumerate_configs(system: SpinSystem, cap: int | None = None) -> list:
    """All configurations of the system's domain, in lexicographic order.

    Restricted systems yield exactly the proper colourings.
    """
    g, q = system.graph, system.q
    _check_cap(q, g.n, system.cap if cap is None else cap)
    if not system.restrict_to_proper:
        return list(itertools.product(range(q), repeat=g.n))
    out = []
    spins = [0] * g.n
    earlier = [[v for v in g.adjacency[u] if v < u] for u in range(g.n)]

    def extend(u):
        if u == g.n:
            out.append(tuple(spins))
            return
        used = {spins[v] for v in earlier[u]}
        for c in range(q):
            if c not in used:
                spins[u] = c
                extend(u + 1)

    extend(0)
    return out


def first_proper_colouring(graph: Graph, q: int):
    """Lexicographically smallest proper colouring, or None."""
    spins = [0] * graph.n
    earlier = [[v for v in graph.adjacency[u] if v < u] for u in range(graph.n)]

    def extend(u):
        if u == graph.n:
            return True
        used = {spins[v] for v in earlier[u]}
        for c in range(q):
            if c not in used:
                spins[u] = c
                if extend(u + 1):
                    return True
        return False

    return tuple(spins) if extend(0) else None
