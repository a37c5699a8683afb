"""Recursive coupling of heat-bath updates on a tree-shaped block.

A boundary pair is a region ``R`` (the block) with two boundary colourings
that differ only at one boundary site ``u``, itself adjacent to exactly one
site ``v`` of ``R``.  The coupling draws ``(c, c')`` at ``v`` from a greedy
maximal coupling of the two marginals.  If the colours agree, the rest of
the block is coupled by the identity; otherwise each subtree hanging off
``v`` is again a boundary pair, with ``v`` as discrepancy and ``(c, c')`` as
its two colours.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import CouplingError, NotATreeBlock
from .core import Coupling, greedy_coupling


@dataclass(frozen=True)
class BoundaryPair:
    block: object       # Block
    x: tuple            # configurations; only spins off the block are read
    y: tuple
    u: int              # the single boundary site where x and y differ

    @classmethod
    def from_configs(cls, block, x, y) -> "BoundaryPair":
        diff = [s for s in range(len(x)) if x[s] != y[s] and s not in block.sites]
        if len(diff) != 1 or diff[0] not in block.boundary:
            raise NotATreeBlock(f"boundaries differ at {diff}, need exactly one boundary site")
        return cls(block, tuple(x), tuple(y), diff[0])

    @property
    def colours(self) -> tuple:
        return self.x[self.u], self.y[self.u]


def check_tree_block(graph, block, u=None):
    """Raise NotATreeBlock unless the block induces a tree and ``u`` (if
    given) touches exactly one block site.  Returns that site or None."""
    R = set(block.sites)
    edges = sum(1 for s in R for t in graph.adjacency[s] if t in R) // 2
    seen = {block.sites[0]}
    stack = [block.sites[0]]
    while stack:
        s = stack.pop()
        for t in graph.adjacency[s]:
            if t in R and t not in seen:
                seen.add(t)
                stack.append(t)
    if seen != R or edges != len(R) - 1:
        raise NotATreeBlock(f"block {block.sites} does not induce a tree")
    if u is None:
        return None
    if u in R:
        raise NotATreeBlock(f"discrepancy site {u} lies inside the block")
    touch = [s for s in graph.adjacency[u] if s in R]
    if len(touch) != 1:
        raise NotATreeBlock(f"site {u} touches {len(touch)} block sites, need exactly one")
    return touch[0]


class RecursiveTreeCoupling:
    """Exact joint law, per-site disagreement and sampler for one boundary pair."""

    def __init__(self, system, pair: BoundaryPair):
        self.system = system
        self.pair = pair
        g = system.graph
        self.root = check_tree_block(g, pair.block, pair.u)
        R = set(pair.block.sites)
        self._R = R
        self._forbidden = {
            s: frozenset(pair.x[w] for w in g.adjacency[s] if w not in R and w != pair.u)
            for s in R
        }
        self._nbrs = {s: tuple(t for t in g.adjacency[s] if t in R) for s in R}
        self._count = lru_cache(maxsize=None)(self._count_impl)
        self._dis = lru_cache(maxsize=None)(self._dis_impl)
        self._unif = lru_cache(maxsize=None)(self._unif_impl)
        self._rec = lru_cache(maxsize=None)(self._rec_impl)

    def _children(self, s, parent):
        return tuple(t for t in self._nbrs[s] if t != parent)

    def _weights(self, s, parent, l):
        out = {}
        for c in range(self.system.q):
            if c == l or c in self._forbidden[s]:
                continue
            w = 1
            for t in self._children(s, parent):
                w *= self._count(t, s, c)
            if w:
                out[c] = w
        return out

    def _count_impl(self, s, parent, l) -> int:
        """Colourings of the subtree at ``s`` given colour ``l`` at ``parent``."""
        return sum(self._weights(s, parent, l).values())

    def marginal(self, s, parent, l) -> dict:
        w = self._weights(s, parent, l)
        total = sum(w.values())
        if not total:
            raise CouplingError(f"no colouring of the subtree at {s} given parent colour {l}")
        return {c: Fraction(m, total) for c, m in w.items()}

    def site_coupling(self, s, parent, l, lp) -> dict:
        return greedy_coupling(self.marginal(s, parent, l), self.marginal(s, parent, lp))

    def _dis_impl(self, s, parent, l, lp):
        if l == lp:
            return ()
        out = defaultdict(Fraction)
        for (c, cp), m in self.site_coupling(s, parent, l, lp).items():
            if c == cp:
                continue
            out[s] += m
            for t in self._children(s, parent):
                for site, p in self._dis(t, s, c, cp):
                    out[site] += m * p
        return tuple(sorted(out.items()))

    def disagreement(self) -> dict:
        """``{site: Pr(colours differ)}`` over every block site."""
        out = {s: Fraction(0) for s in self.pair.block.sites}
        l, lp = self.pair.colours
        out.update(dict(self._dis(self.root, self.pair.u, l, lp)))
        return out

    def _unif_impl(self, s, parent, l):
        """Uniform law of subtree colourings as ``((site, colour), ...) -> mass``."""
        out = {}
        for c, pc in self.marginal(s, parent, l).items():
            parts = [({((s, c),): Fraction(1)})]
            parts += [dict(self._unif(t, s, c)) for t in self._children(s, parent)]
            for key, m in _product(parts).items():
                out[key] = out.get(key, 0) + pc * m
        return tuple(out.items())

    def _rec_impl(self, s, parent, l, lp):
        if l == lp:
            return tuple(((k, k), m) for k, m in self._unif(s, parent, l))
        out = defaultdict(Fraction)
        for (c, cp), m in self.site_coupling(s, parent, l, lp).items():
            kids = self._children(s, parent)
            if c == cp:
                parts = [{(((s, c),), ((s, c),)): Fraction(1)}]
                parts += [{(k, k): p for k, p in self._unif(t, s, c)} for t in kids]
            else:
                parts = [{(((s, c),), ((s, cp),)): Fraction(1)}]
                parts += [dict(self._rec(t, s, c, cp)) for t in kids]
            for key, p in _pair_product(parts).items():
                out[key] += m * p
        return tuple(out.items())

    def joint(self) -> dict:
        """Exact joint law over pairs of block colour tuples (``block.sites`` order)."""
        l, lp = self.pair.colours
        order = self.pair.block.sites
        out = {}
        for (ka, kb), m in self._rec(self.root, self.pair.u, l, lp):
            da, db = dict(ka), dict(kb)
            out[(tuple(da[s] for s in order), tuple(db[s] for s in order))] = m
        return out

    def coupling(self) -> Coupling:
        """The joint law lifted to full configurations, checked against the
        heat-bath laws from both boundary colourings."""
        kernel = self.system.kernel(self.pair.block)
        order = self.pair.block.sites

        def place(base, colours):
            z = list(base)
            for s, c in zip(order, colours):
                z[s] = c
            return tuple(z)

        joint = {(place(self.pair.x, a), place(self.pair.y, b)): m for (a, b), m in self.joint().items()}
        return Coupling(joint, kernel.distribution(self.pair.x), kernel.distribution(self.pair.y)).check()

    def sample(self, rng: np.random.Generator) -> tuple:
        """One draw ``(colours_x, colours_y)`` as dicts over block sites."""
        a, b = {}, {}
        l, lp = self.pair.colours
        self._sample(self.root, self.pair.u, l, lp, a, b, rng)
        return a, b

    def _sample(self, s, parent, l, lp, a, b, rng):
        if l == lp:
            c = _draw(self.marginal(s, parent, l), rng)
            a[s] = b[s] = c
            for t in self._children(s, parent):
                self._sample(t, s, c, c, a, b, rng)
            return
        c, cp = _draw(self.site_coupling(s, parent, l, lp), rng)
        a[s], b[s] = c, cp
        for t in self._children(s, parent):
            self._sample(t, s, c, cp, a, b, rng)


def _draw(law: dict, rng):
    keys = sorted(law)
    probs = np.array([float(law[k]) for k in keys])
    return keys[int(rng.choice(len(keys), p=probs / probs.sum()))]


def _product(parts: list) -> dict:
    out = {(): Fraction(1)}
    for part in parts:
        out = {k + kp: m * mp for k, m in out.items() for kp, mp in part.items()}
    return out


def _pair_product(parts: list) -> dict:
    out = {((), ()): Fraction(1)}
    for part in parts:
        out = {(a + ap, b + bp): m * mp for (a, b), m in out.items() for (ap, bp), mp in part.items()}
    return out


def recursive_tree_coupling(system, pair: BoundaryPair) -> RecursiveTreeCoupling:
    return RecursiveTreeCoupling(system, pair)
