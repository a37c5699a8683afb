"""Influence parameters: rho, alpha and the block-averaged alpha_W."""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import (
    IndexOutOfRange,
    NotATreeBlock,
    StateSpaceTooLarge,
    StrategyShapeMismatch,
)
from ..spins import DEFAULT_CAP
from .core import Coupling, identity_coupling, maximal_site_coupling, min_hamming_coupling
from .edge import edge_case_coupling
from .recursive import BoundaryPair, RecursiveTreeCoupling, check_tree_block

STRATEGIES = ("paper-edge", "min-hamming", "maximal-site", "identity", "recursive-tree")


def discrepancy_pairs(system, i: int) -> list:
    """Ordered pairs of domain configurations differing exactly at ``i``."""
    if not 0 <= i < system.n:
        raise IndexOutOfRange(f"site {i} outside 0..{system.n - 1}")
    space = system.state_space()
    a, b = space.discrepancy_index_pairs(i)
    return [(space.configs[s], space.configs[t]) for s, t in zip(a, b)]


def check_strategy_shape(system, schedule, strategy: str):
    if strategy not in STRATEGIES:
        raise StrategyShapeMismatch(f"unknown strategy {strategy!r}")
    for k, block in enumerate(schedule.blocks):
        if strategy == "paper-edge":
            if len(block.sites) != 2 or not system.graph.has_edge(*block.sites):
                raise StrategyShapeMismatch(f"block {k} {block.sites} is not an edge")
        elif strategy == "maximal-site":
            if len(block.sites) != 1:
                raise StrategyShapeMismatch(f"block {k} {block.sites} is not a single site")
        elif strategy == "recursive-tree":
            try:
                check_tree_block(system.graph, block)
                for u in block.boundary:
                    check_tree_block(system.graph, block, u)
            except NotATreeBlock as exc:
                raise StrategyShapeMismatch(f"block {k}: {exc}") from exc


def strategy_coupling(system, strategy: str, block, x, y, i: int):
    """Coupling of the two block updates from ``x`` and ``y`` (differing at
    ``i``) under ``strategy``.  Returns ``(coupling, case)``; ``case`` is the
    edge case number for the paper-edge strategy and None otherwise."""
    kernel = system.kernel(block)
    if strategy == "paper-edge":
        ec = edge_case_coupling(system, x, y, i, block)
        return ec.coupling, ec.case
    if strategy == "identity":
        shared = getattr(kernel, "shared_coupling", None)
        if shared is not None:
            return shared(x, y).check(), None
        d1, d2 = kernel.distribution(x), kernel.distribution(y)
        if d1 != d2:
            raise StrategyShapeMismatch("identity coupling needs equal update laws")
        return identity_coupling(d1), None
    d1, d2 = kernel.distribution(x), kernel.distribution(y)
    if strategy == "min-hamming":
        return min_hamming_coupling(d1, d2, block.sites), None
    if strategy == "maximal-site":
        if len(block.sites) != 1:
            raise StrategyShapeMismatch(f"block {block.sites} is not a single site")
        return maximal_site_coupling(d1, d2, block.sites[0]), None
    if strategy == "recursive-tree":
        if i not in block.boundary:
            return identity_coupling(d1), None
        return RecursiveTreeCoupling(system, BoundaryPair(block, tuple(x), tuple(y), i)).coupling(), None
    raise StrategyShapeMismatch(f"unknown strategy {strategy!r}")


def read_sites(kernel, i: int) -> tuple:
    """Sites whose spins determine the coupled update for a discrepancy at ``i``."""
    read = set(kernel.dependency_sites) | {i}
    if getattr(kernel, "reads_block", True):
        read |= set(kernel.block.sites)
    return tuple(sorted(read))


def _complete(graph, q, fixed: dict, i: int, ci2: int):
    """A proper colouring extending ``fixed`` in which the neighbours of
    ``i`` also avoid ``ci2``, or None."""
    free = [s for s in range(graph.n) if s not in fixed]
    spins = dict(fixed)

    def extend(t):
        if t == len(free):
            return True
        s = free[t]
        used = {spins[w] for w in graph.adjacency[s] if w in spins}
        if i in graph.adjacency[s]:
            used.add(ci2)
        for c in range(q):
            if c not in used:
                spins[s] = c
                if extend(t + 1):
                    return True
        spins.pop(s, None)
        return False

    return tuple(spins[s] for s in range(graph.n)) if extend(0) else None


def local_pairs(system, block, i: int, cap: int = DEFAULT_CAP):
    """Representatives of S_i up to what the block's kernel can read.

    Yields ``(x, y)``.  Pairs agreeing on the read sites get identical
    couplings on the block, so one representative per pattern suffices.
    Unconstrained systems set every unread site to 0.  Restricted systems
    enumerate proper patterns on the read sites and complete each to a
    proper pair when possible.
    """
    if not 0 <= i < system.n:
        raise IndexOutOfRange(f"site {i} outside 0..{system.n - 1}")
    kernel = system.kernel(block)
    read = read_sites(kernel, i)
    q, n = system.q, system.n
    if q ** len(read) * (q - 1) > cap:
        raise StateSpaceTooLarge(f"{q}^{len(read)} local patterns exceed cap {cap}")
    if getattr(system, "unconstrained", False):
        for values in itertools.product(range(q), repeat=len(read)):
            x = [0] * n
            for s, c in zip(read, values):
                x[s] = c
            for c in range(q):
                if c != x[i]:
                    y = list(x)
                    y[i] = c
                    yield tuple(x), tuple(y)
        return
    graph = system.graph
    others = [s for s in read if s != i]
    for ci in range(q):
        for ci2 in range(q):
            if ci2 == ci:
                continue
            fixed = {i: ci}

            def walk(t):
                if t == len(others):
                    x = _complete(graph, q, fixed, i, ci2)
                    if x is not None:
                        y = list(x)
                        y[i] = ci2
                        yield x, tuple(y)
                    return
                s = others[t]
                used = {fixed[w] for w in graph.adjacency[s] if w in fixed}
                if i in graph.adjacency[s]:
                    used.add(ci2)
                for c in range(q):
                    if c not in used:
                        fixed[s] = c
                        yield from walk(t + 1)
                        del fixed[s]

            yield from walk(0)


@dataclass(frozen=True)
class InfluenceReport:
    rho: dict             # (k, i, j) -> max disagreement probability at j
    alpha: object
    alpha_weitz: object
    witness: tuple        # (x, y, k, i, j) attaining alpha, None when alpha == 0
    influence_sums: dict  # (k, j) -> sum_i (w_i / w_j) rho[k, i, j]
    strategy: str = ""
    pairs_checked: int = 0
    cases: dict = field(default_factory=dict)  # case number -> pairs coupled under it

    def rho_hat(self) -> dict:
        """``(i, j) -> rho`` for single-site schedules (block k updates site j)."""
        return {(i, j): v for (k, i, j), v in self.rho.items()}


def rho_matrix(system, schedule, strategy: str = "paper-edge", weights=None, exact: bool = True):
    """Influence report of ``strategy`` on ``schedule``.

    ``rho[k, i, j]`` is the largest disagreement probability at ``j`` over
    all ``(x, y)`` in S_i after coupling the update of block ``k``.  With
    ``exact=False`` every coupling is converted to floats and its marginals
    are checked to 1e-12.
    """
    check_strategy_shape(system, schedule, strategy)
    w = tuple(Fraction(v) for v in (system.weights if weights is None else weights))
    if len(w) != system.n:
        raise ValueError("one weight per site required")
    n = system.n
    zero = Fraction(0) if exact else 0.0
    rho = {}
    argmax = {}
    cases = Counter()
    checked = 0
    for k, block in enumerate(schedule.blocks):
        for i in range(n):
            best = {j: zero for j in block.sites}
            where = {j: None for j in block.sites}
            for x, y in local_pairs(system, block, i, getattr(system, "cap", DEFAULT_CAP)):
                coupling, case = strategy_coupling(system, strategy, block, x, y, i)
                if not exact:
                    coupling = coupling.to_float().check(tol=1e-12)
                checked += 1
                if case is not None:
                    cases[case] += 1
                dis = coupling.disagreements(block.sites)
                for j in block.sites:
                    if where[j] is None or dis[j] > best[j]:
                        best[j], where[j] = dis[j], (x, y)
            for j in block.sites:
                rho[(k, i, j)] = best[j]
                argmax[(k, i, j)] = where[j]

    sums = {}
    for k, block in enumerate(schedule.blocks):
        for j in block.sites:
            total = sum((w[i] / w[j] * rho[(k, i, j)] for i in range(n)), zero)
            sums[(k, j)] = total if exact else float(total)
    alpha = max(sums.values(), default=zero)
    witness = None
    if alpha:
        k, j = next(key for key in sorted(sums) if sums[key] == alpha)
        i = max(range(n), key=lambda s: (w[s] * rho[(k, s, j)], -s))
        x, y = argmax[(k, i, j)]
        witness = (x, y, k, i, j)

    per_site = defaultdict(lambda: zero)
    for (k, i, j), v in rho.items():
        per_site[j] += v
    alpha_w = max((per_site[j] / len(schedule.blocks_containing(j)) for j in range(n)
                   if schedule.blocks_containing(j)), default=zero)
    return InfluenceReport(rho, alpha, alpha_w, witness, sums, strategy, checked, dict(cases))
