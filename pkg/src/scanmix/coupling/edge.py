"""Case-split couplings for heat-bath updates of an edge block.

Orientation convention: for a pair ``(x, y)`` differing at ``i`` the colour
``x_i`` plays the role of "1" and ``y_i`` the role of "2".  When a case only
matches with the roles swapped, the coupling is built for ``(y, x)`` and
transposed.  Case numbers are 1, 3, 4, 5, 6 (there is no case 2); case 0
is the identity coupling used when ``i`` is not on the block boundary.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from ..errors import CouplingError, NotAnEdgeBlock, NotInS_i
from .core import Coupling, constrained_hamming_plan, two_step_coupling


@dataclass(frozen=True)
class EdgeCoupling:
    coupling: Coupling
    case: int
    j: int        # site called j in the case description
    j_prime: int  # the other endpoint
    swapped: bool  # built with the roles of x and y exchanged

    def disagreement(self, site):
        return self.coupling.disagreement(site)


def _check_pair(x, y, i):
    if len(x) != len(y) or not 0 <= i < len(x):
        raise NotInS_i(f"site {i} outside configuration of length {len(x)}")
    diff = [s for s in range(len(x)) if x[s] != y[s]]
    if diff != [i]:
        raise NotInS_i(f"configurations differ at {diff}, expected exactly [{i}]")


def _other_colours(system, x, i, site, block):
    """Colours of boundary neighbours of ``site`` other than ``i``."""
    return {x[w] for w in system.graph.adjacency[site] if w != i and w not in block.sites}


def _lift(base, u, v, pair):
    z = list(base)
    z[u], z[v] = pair
    return tuple(z)


def _case3(d1, d2, one, two) -> dict:
    if len(d1) != len(d2):
        raise CouplingError("case 3 needs equally many choices on both sides")
    joint = {}
    for h, m in d1.items():
        g = list(h)
        if h[0] == two:
            g[0] = one
        elif h[1] == two:
            g[1] = one
        g = tuple(g)
        if g not in d2:
            raise CouplingError(f"case 3 image {g} is not a valid choice")
        joint[(h, g)] = m
    return joint


def _case5(d1, d2) -> dict:
    """Identity on shared choices, then index matching, then spreading."""
    if len(d1) < len(d2):
        raise CouplingError("case 5 needs the larger side first")
    common = sorted(set(d1) & set(d2))
    z1 = sorted(set(d1) - set(d2))
    z2 = sorted(set(d2) - set(d1))
    joint = defaultdict(Fraction)
    for h in common:
        joint[(h, h)] += d1[h]
    for h, g in zip(z1, z2):
        joint[(h, g)] += d1[h]
    spread = sorted(d2)
    for h in z1[len(z2):]:
        for g in spread:
            joint[(h, g)] += d1[h] * d2[g]
    return dict(joint)


def _case6(d1, d2, two, sites) -> dict:
    z2 = sorted(d2)
    if not set(z2) <= set(d1):
        raise CouplingError("case 6 needs every choice of the second law to be valid for the first")
    zj = sorted(h for h in d1 if h[0] == two)
    zjp = sorted(h for h in d1 if h[1] == two)
    if set(d1) != set(z2) | set(zj) | set(zjp):
        raise CouplingError("case 6 partition does not cover the first law")
    joint = defaultdict(Fraction)
    for h in z2:
        joint[(h, h)] += d1[h]
    for part in (zj, zjp):
        if not part:
            continue
        mass = sum((d1[h] for h in part), Fraction(0))
        for pair, m in constrained_hamming_plan(part, d1, z2, mass / len(z2), sites).items():
            joint[pair] += m
    return dict(joint)


def edge_case_coupling(system, x, y, i: int, block) -> EdgeCoupling:
    """Coupling of the heat-bath updates of edge ``block`` from ``x`` and ``y``.

    ``(x, y)`` must differ exactly at ``i``.  Dispatch is first match in
    the order 3, 4, 5, 6 once ``i`` is adjacent to both endpoints, trying
    the given orientation before the swapped one.
    """
    if len(block.sites) != 2 or not system.graph.has_edge(*block.sites):
        raise NotAnEdgeBlock(f"block {block.sites} is not an edge")
    x, y = tuple(x), tuple(y)
    _check_pair(x, y, i)
    kernel = system.kernel(block)
    full1, full2 = kernel.distribution(x), kernel.distribution(y)
    u, v = block.sites
    # work on block colour pairs (position 0 is u, 1 is v), lift at the end
    d1 = {(h[u], h[v]): m for h, m in full1.items()}
    d2 = {(h[u], h[v]): m for h, m in full2.items()}
    P = (0, 1)

    def built(joint, case, j, jp, swapped):
        if swapped:
            joint = {(b_, a_): m for (a_, b_), m in joint.items()}
        lifted = {(_lift(x, u, v, a_), _lift(y, u, v, b_)): m for (a_, b_), m in joint.items()}
        return EdgeCoupling(Coupling(lifted, full1, full2).check(), case, j, jp, swapped)

    if i not in block.boundary:
        if d1 != d2:
            raise CouplingError("laws differ although the discrepancy is off the boundary")
        return built({(h, h): m for h, m in d1.items()}, 0, u, v, False)
    adj = system.graph.adjacency[i]
    at_u, at_v = u in adj, v in adj
    if at_u != at_v:
        j, jp = (u, v) if at_u else (v, u)
        c = two_step_coupling(d1, d2, P[block.sites.index(j)], P)
        return built(c.joint, 1, j, jp, False)

    a, b = x[i], y[i]
    nb = {s: _other_colours(system, x, i, s, block) & {a, b} for s in block.sites}
    pos = {u: 0, v: 1}

    if not nb[u] and not nb[v]:
        return built(_case3(d1, d2, a, b), 3, u, v, False)

    for swapped in (False, True):
        one = b if swapped else a
        p, q_ = (d2, d1) if swapped else (d1, d2)
        for jp, j in ((u, v), (v, u)):
            if one in nb[jp] and not nb[j]:
                c = two_step_coupling(p, q_, pos[jp], P)
                return built(c.joint, 4, j, jp, swapped)

    for jp, j in ((u, v), (v, u)):
        if nb[jp] == {a} and nb[j] == {b} or nb[jp] == {b} and nb[j] == {a}:
            # index matching runs from the side with more choices
            swapped = len(d2) > len(d1)
            p, q_ = (d2, d1) if swapped else (d1, d2)
            return built(_case5(p, q_), 5, j, jp, swapped)

    for swapped in (False, True):
        one, two = (b, a) if swapped else (a, b)
        p, q_ = (d2, d1) if swapped else (d1, d2)
        if one in nb[u] and one in nb[v]:
            return built(_case6(p, q_, two, P), 6, u, v, swapped)

    raise CouplingError(f"no coupling case matches neighbour colours {nb}")


def case_bounds(case: int, q: int, delta: int) -> tuple:
    """Upper bounds ``(at j, at j')`` for the influence under each case."""
    g = Fraction(1, q - delta)
    g1 = Fraction(1, q - delta + 1)
    return {
        0: (Fraction(0), Fraction(0)),
        1: (g, g * g),
        3: (g1, g),
        4: (g, g1),
        5: (g, g),
        6: (g1 + g1 * g1, g1 + g1 * g1),
    }[case]


def triangle_bound(q: int, delta: int) -> Fraction:
    g = Fraction(1, q - delta)
    return g + g * g
