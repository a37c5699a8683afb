"""Coupling type and the generic constructions shared by every strategy."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from ..errors import IndexOutOfRange, MarginalMismatch
from ..transport import solve_transport


@dataclass(frozen=True)
class Coupling:
    """Joint law ``{(a, b): mass}`` with its two target marginals."""

    joint: dict
    marginal_a: dict
    marginal_b: dict

    def disagreement(self, site: int):
        """Probability that the two coupled outcomes differ at ``site``."""
        return sum((m for (a, b), m in self.joint.items() if a[site] != b[site]), Fraction(0))

    def disagreements(self, sites) -> dict:
        out = {s: Fraction(0) for s in sites}
        for (a, b), m in self.joint.items():
            for s in sites:
                if a[s] != b[s]:
                    out[s] += m
        return out

    def expected_hamming(self, sites):
        return sum(self.disagreements(sites).values(), Fraction(0))

    def row_sums(self) -> dict:
        out = defaultdict(Fraction)
        for (a, _), m in self.joint.items():
            out[a] += m
        return out

    def column_sums(self) -> dict:
        out = defaultdict(Fraction)
        for (_, b), m in self.joint.items():
            out[b] += m
        return out

    def marginal_error(self):
        """Largest deviation of either marginal from its target."""
        err = 0
        for got, want in ((self.row_sums(), self.marginal_a), (self.column_sums(), self.marginal_b)):
            for k in set(got) | set(want):
                err = max(err, abs(got.get(k, 0) - want.get(k, 0)))
        return err

    def check(self, tol=0):
        if any(m < 0 for m in self.joint.values()):
            raise MarginalMismatch("negative joint mass")
        if tol == 0:
            rows = {k: m for k, m in self.row_sums().items() if m}
            cols = {k: m for k, m in self.column_sums().items() if m}
            want_a = {k: m for k, m in self.marginal_a.items() if m}
            want_b = {k: m for k, m in self.marginal_b.items() if m}
            if rows == want_a and cols == want_b:
                return self
        err = self.marginal_error()
        if err > tol:
            raise MarginalMismatch(f"marginal error {err} exceeds {tol}")
        return self

    def transpose(self) -> "Coupling":
        return Coupling({(b, a): m for (a, b), m in self.joint.items()}, self.marginal_b, self.marginal_a)

    def to_float(self) -> "Coupling":
        return Coupling(
            {k: float(m) for k, m in self.joint.items()},
            {k: float(m) for k, m in self.marginal_a.items()},
            {k: float(m) for k, m in self.marginal_b.items()},
        )


def identity_coupling(d: dict) -> Coupling:
    return Coupling({(k, k): m for k, m in d.items()}, d, d)


def greedy_coupling(d1: dict, d2: dict) -> dict:
    """Maximal coupling of two laws on the same outcomes.

    Matched mass on outcome ``k`` is ``min(d1[k], d2[k])``; the leftovers
    are paired in ascending outcome order.
    """
    joint = defaultdict(Fraction)
    r1, r2 = {}, {}
    for k in sorted(set(d1) | set(d2)):
        a, b = d1.get(k, 0), d2.get(k, 0)
        m = min(a, b)
        if m:
            joint[(k, k)] += m
        if a > m:
            r1[k] = a - m
        if b > m:
            r2[k] = b - m
    k1, k2 = sorted(r1), sorted(r2)
    i = j = 0
    while i < len(k1) and j < len(k2):
        f = min(r1[k1[i]], r2[k2[j]])
        joint[(k1[i], k2[j])] += f
        r1[k1[i]] -= f
        r2[k2[j]] -= f
        if r1[k1[i]] == 0:
            i += 1
        if j < len(k2) and r2[k2[j]] == 0:
            j += 1
    return dict(joint)


def site_marginal(d: dict, site: int) -> dict:
    out = defaultdict(Fraction)
    for config, m in d.items():
        out[config[site]] += m
    return dict(out)


def maximal_site_coupling(d1: dict, d2: dict, site: int) -> Coupling:
    """Coupling matching each colour at ``site`` with mass ``min(p1(c), p2(c))``.

    ``d1``/``d2`` are either colour laws (int keys) or laws over
    configurations that vary only at ``site``.
    """
    if site < 0:
        raise IndexOutOfRange(f"site {site}")
    if all(isinstance(k, int) for k in list(d1) + list(d2)):
        joint = greedy_coupling(d1, d2)
        return Coupling(joint, d1, d2).check()
    by_colour = []
    for d in (d1, d2):
        table = {}
        for config in d:
            if site >= len(config):
                raise IndexOutOfRange(f"site {site}")
            c = config[site]
            if c in table:
                raise MarginalMismatch("law varies outside the coupled site")
            table[c] = config
        by_colour.append(table)
    colour_joint = greedy_coupling(site_marginal(d1, site), site_marginal(d2, site))
    joint = {(by_colour[0][a], by_colour[1][b]): m for (a, b), m in colour_joint.items()}
    return Coupling(joint, d1, d2).check()


def hamming(a, b, sites) -> int:
    return sum(1 for s in sites if a[s] != b[s])


def min_hamming_coupling(d1: dict, d2: dict, sites, check: bool = True) -> Coupling:
    """Coupling minimising expected Hamming distance over ``sites``.

    Solved exactly as a transportation problem; outcomes are ordered
    lexicographically, which fixes the pivot order and hence ties.
    """
    k1, k2 = sorted(d1), sorted(d2)
    cost = [[hamming(a, b, sites) for b in k2] for a in k1]
    plan, _ = solve_transport([d1[k] for k in k1], [d2[k] for k in k2], cost)
    joint = {(k1[i], k2[j]): m for (i, j), m in plan.items()}
    c = Coupling(joint, d1, d2)
    return c.check() if check else c


def constrained_hamming_plan(sources: list, source_mass: dict, targets: list, target_mass, sites) -> dict:
    """Min-Hamming transport of ``sources`` onto ``targets`` where every
    target receives exactly ``target_mass`` (a scalar)."""
    cost = [[hamming(a, b, sites) for b in targets] for a in sources]
    plan, _ = solve_transport([source_mass[a] for a in sources], [target_mass] * len(targets), cost)
    return {(sources[i], targets[j]): m for (i, j), m in plan.items()}


def two_step_coupling(d1: dict, d2: dict, first: int, sites) -> Coupling:
    """Greedy maximal coupling at site ``first``, then a min-Hamming
    coupling of the two conditional laws for each drawn colour pair.

    The result is not checked here; callers lifting it check once."""
    m1, m2 = site_marginal(d1, first), site_marginal(d2, first)
    joint = defaultdict(Fraction)
    for (c1, c2), m in greedy_coupling(m1, m2).items():
        cond1 = {h: p / m1[c1] for h, p in d1.items() if h[first] == c1}
        cond2 = {h: p / m2[c2] for h, p in d2.items() if h[first] == c2}
        sub = min_hamming_coupling(cond1, cond2, sites, check=False)
        for pair, p in sub.joint.items():
            joint[pair] += m * p
    return Coupling(dict(joint), d1, d2)
