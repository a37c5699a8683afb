"""A ring where block-averaged influence is below one yet the systematic scan
never mixes.

Sites ``0..n-1`` sit on a cycle and block ``i`` is ``{i, i+1 mod n}``.  Its
update copies the spin of ``i`` onto ``i+1`` and then draws a fresh uniform
spin for ``i``.  Scanning blocks ``0, 1, ..., n-1`` carries the old spin of
site 0 all the way round the cycle and back onto site 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .coupling.core import Coupling
from .coupling.influence import rho_matrix
from .dynamics import BlockKernel, simulate
from .exact import block_matrix, worst_start_curve
from .spins import Block, BlockSchedule, StateSpace, cycle_graph


class CopyShiftKernel(BlockKernel):
    """Copy spin of ``source`` onto ``target``, then resample ``source`` uniformly."""

    dependency_sites = ()
    reads_block = True

    def __init__(self, q: int, block: Block, source: int, target: int):
        self.q = q
        self.block = block
        self.source = source
        self.target = target

    def _out(self, x, s):
        z = list(x)
        z[self.target] = x[self.source]
        z[self.source] = s
        return tuple(z)

    def distribution(self, x) -> dict:
        p = Fraction(1, self.q)
        return {self._out(x, s): p for s in range(self.q)}

    def sample(self, x, rng):
        return self._out(x, int(rng.integers(self.q)))

    def shared_coupling(self, x, y) -> Coupling:
        """Both copies draw the same fresh spin."""
        p = Fraction(1, self.q)
        joint = {(self._out(x, s), self._out(y, s)): p for s in range(self.q)}
        return Coupling(joint, self.distribution(x), self.distribution(y))


@dataclass(frozen=True)
class RingSystem:
    n: int
    q: int
    cap: int = 10**6
    _kernels: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    unconstrained = True
    restrict_to_proper = False

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("the ring needs at least 3 sites")
        if self.q < 1:
            raise ValueError("q must be at least 1")

    @cached_property
    def graph(self):
        return cycle_graph(self.n)

    @property
    def weights(self) -> tuple:
        return tuple(Fraction(1) for _ in range(self.n))

    def block(self, i: int) -> Block:
        sites = tuple(sorted((i % self.n, (i + 1) % self.n)))
        inside = set(sites)
        boundary = tuple(sorted({(i - 1) % self.n, (i + 2) % self.n} - inside))
        return Block(sites, boundary)

    def schedule(self) -> BlockSchedule:
        """Blocks 0..n-1 in scan order."""
        return BlockSchedule(tuple(self.block(i) for i in range(self.n)), self.n)

    def kernel(self, block: Block) -> CopyShiftKernel:
        k = self._kernels.get(block)
        if k is None:
            a, b = block.sites
            source, target = (a, b) if (a + 1) % self.n == b else (b, a)
            k = self._kernels[block] = CopyShiftKernel(self.q, block, source, target)
        return k

    def initial_state(self) -> tuple:
        return (0,) * self.n

    @cached_property
    def _space(self) -> StateSpace:
        if self.q**self.n > self.cap:
            from .errors import StateSpaceTooLarge

            raise StateSpaceTooLarge(f"q^n = {self.q}^{self.n} exceeds cap {self.cap}")
        configs = tuple(itertools.product(range(self.q), repeat=self.n))
        p = Fraction(1, len(configs))
        return StateSpace(configs, tuple(p for _ in configs), self.q, "omega+")

    def state_space(self) -> StateSpace:
        return self._space


def ring_kernel(state, i: int, q: int) -> dict:
    """Update law of block ``{i, i+1}`` from ``state``."""
    state = tuple(state)
    ring = RingSystem(len(state), q)
    return ring.kernel(ring.block(i)).distribution(state)


def ring_influence(n: int, q: int):
    """Influence report of the ring under the shared-draw coupling."""
    ring = RingSystem(n, q)
    return rho_matrix(ring, ring.schedule(), "identity")


@dataclass(frozen=True)
class NonMixingEvidence:
    n: int
    q: int
    scans: int
    seed: int
    site0_values: tuple     # spin of site 0 after each scan, starting with scan 0
    site0_invariant: bool
    alpha: Fraction
    alpha_weitz: Fraction
    tv_curve: tuple = ()         # exact worst-start TV of the scan, t = 0..t_max
    tv_floor: object = None      # smallest value of tv_curve
    random_update_curve: tuple = ()  # same for n uniformly chosen block updates per step


def random_update_matrix(ring: RingSystem, exact: bool = True):
    """Transition matrix of ``n`` random block updates (uniform block each time)."""
    mats = [block_matrix(ring, b, exact=exact) for b in ring.schedule().blocks]
    if exact:
        R = sum(mats[1:], mats[0]) * Fraction(1, len(mats))
    else:
        R = sum((m.toarray() for m in mats), np.zeros(mats[0].shape)) / len(mats)
    out = R
    for _ in range(ring.n - 1):
        out = out.dot(R)
    return out


def demonstrate_nonmixing(n: int, q: int, scans: int, seed: int, exact: bool = False,
                          t_max: int = 100, start=None) -> NonMixingEvidence:
    """Run the scan and check that site 0 never changes across complete scans.

    With ``exact`` the worst-start TV curves of the scan and of the
    random-update comparator are computed for ``t = 0..t_max``.
    """
    ring = RingSystem(n, q)
    traj = simulate(ring, ring.schedule(), scans, seed, start=start)
    site0 = tuple(x[0] for x in traj)
    if any(s != site0[0] for s in site0):
        raise AssertionError("site 0 changed across a complete scan")
    report = ring_influence(n, q)
    curve, floor, rnd = (), None, ()
    if exact:
        curve = tuple(worst_start_curve(ring, ring.schedule(), t_max, exact=True))
        floor = min(curve)
        rnd = tuple(worst_start_curve(ring, ring.schedule(), t_max, exact=True,
                                      step_matrix=random_update_matrix(ring)))
    return NonMixingEvidence(n, q, scans, seed, site0, True, report.alpha, report.alpha_weitz,
                             curve, floor, rnd)
