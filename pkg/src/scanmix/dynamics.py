"""Block update kernels, the systematic scan, and seeded simulation."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .errors import EmptySupport
from .spins import Block, BlockSchedule, first_proper_colouring


class BlockKernel:
    """Transition rule attached to one block.

    Subclasses provide ``distribution(x)`` (exact masses keyed by the next
    configuration) and ``sample(x, rng)``.  ``dependency_sites`` lists the
    sites outside the block whose spins the rule reads; the update of two
    configurations agreeing there is identical.  ``reads_block`` says whether
    the current spins inside the block also matter.
    """

    block: Block
    dependency_sites: tuple
    reads_block: bool = True

    def distribution(self, x) -> dict:
        raise NotImplementedError

    def sample(self, x, rng: np.random.Generator):
        dist = self.distribution(x)
        keys = list(dist)
        probs = np.array([float(dist[k]) for k in keys])
        return keys[rng.choice(len(keys), p=probs / probs.sum())]


class HeatBathKernel(BlockKernel):
    """Uniform resampling of a block among colourings with no monochromatic
    edge touching the block."""

    reads_block = False

    def __init__(self, system, block: Block):
        self.system = system
        self.block = block
        self.dependency_sites = block.boundary
        g = system.graph
        pos = {s: t for t, s in enumerate(block.sites)}
        # per block site: boundary neighbours, and block neighbours earlier in order
        self._outside = [tuple(v for v in g.adjacency[s] if v not in pos) for s in block.sites]
        self._inside = [tuple(pos[v] for v in g.adjacency[s] if v in pos and pos[v] < t)
                        for t, s in enumerate(block.sites)]
        self._cache: dict = {}

    def block_colourings(self, x) -> list:
        """Admissible colour tuples for the block sites (in ``block.sites`` order)."""
        key = tuple(x[s] for s in self.dependency_sites)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        q = self.system.q
        forbidden = [{x[v] for v in out} for out in self._outside]
        m = len(self.block.sites)
        cur = [0] * m
        out = []

        def extend(t):
            if t == m:
                out.append(tuple(cur))
                return
            used = forbidden[t] | {cur[p] for p in self._inside[t]}
            for c in range(q):
                if c not in used:
                    cur[t] = c
                    extend(t + 1)

        extend(0)
        self._cache[key] = out
        return out

    def _place(self, x, colours):
        y = list(x)
        for s, c in zip(self.block.sites, colours):
            y[s] = c
        return tuple(y)

    def distribution(self, x) -> dict:
        support = self.block_colourings(x)
        if not support:
            raise EmptySupport(f"boundary colours admit no colouring of block {self.block.sites}")
        p = Fraction(1, len(support))
        return {self._place(x, c): p for c in support}

    def sample(self, x, rng):
        support = self.block_colourings(x)
        if not support:
            raise EmptySupport(f"boundary colours admit no colouring of block {self.block.sites}")
        return self._place(x, support[int(rng.integers(len(support)))])


def heatbath_distribution(system, config, block: Block) -> dict:
    """Exact heat-bath update law of ``block`` from ``config``."""
    return system.kernel(block).distribution(tuple(config))


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based 64-bit generator; independent chains should use ``spawn``."""
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class ChainState:
    current: tuple
    rng: np.random.Generator
    scan_count: int = 0


def _check_off_block(x, y, block):
    inside = set(block.sites)
    for s, (a, b) in enumerate(zip(x, y)):
        if a != b and s not in inside:
            raise AssertionError(f"update of block {block.sites} changed site {s}")


def apply_scan(system, schedule: BlockSchedule, state: ChainState) -> ChainState:
    """Update every block once, in schedule order."""
    x = state.current
    for block in schedule.blocks:
        y = system.kernel(block).sample(x, state.rng)
        _check_off_block(x, y, block)
        x = y
    return replace(state, current=x, scan_count=state.scan_count + 1)


def default_start(system):
    start = first_proper_colouring(system.graph, system.q)
    if start is None:
        raise EmptySupport(f"graph has no proper {system.q}-colouring")
    return start


def simulate(system, schedule: BlockSchedule, scans: int, seed: int, start=None) -> list:
    """Trajectory of ``scans + 1`` configurations, the first being ``start``.

    Without ``start`` the chain begins at the system's ``initial_state()``
    if it has one, else at the lexicographically smallest proper colouring.
    """
    if scans < 0:
        raise ValueError("scans must be non-negative")
    if not schedule.covers:
        raise ValueError("schedule does not cover every site")
    if start is not None:
        x = tuple(start)
    elif hasattr(system, "initial_state"):
        x = system.initial_state()
    else:
        x = default_start(system)
    state = ChainState(x, make_rng(seed))
    out = [x]
    for _ in range(scans):
        state = apply_scan(system, schedule, state)
        out.append(state.current)
    return out
