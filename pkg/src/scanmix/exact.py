"""Dense computations on enumerated state spaces.

Two numeric backends are available throughout: ``exact=True`` works in
:class:`fractions.Fraction` (object arrays), the default uses float64.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse

from .errors import DegenerateFunctional, DomainMismatch, NonErgodic, StateSpaceTooLarge
from .spins import BlockSchedule

DENSE_CAP = 5000


@dataclass(frozen=True)
class Distribution:
    masses: np.ndarray
    domain: str = "omega"

    def __post_init__(self):
        if np.any(self.masses < 0):
            raise ValueError("negative mass")


def _domain_of(d):
    if isinstance(d, Distribution):
        return d.masses, d.domain
    if isinstance(d, dict):
        return d, None
    return np.asarray(d), None


def tv_distance(a, b):
    """Half the L1 distance between two distributions.

    Accepts :class:`Distribution` objects, plain arrays over the same
    domain, or sparse ``{outcome: mass}`` dicts.  Exact inputs give an exact
    result.
    """
    ma, da = _domain_of(a)
    mb, db = _domain_of(b)
    if isinstance(ma, dict) or isinstance(mb, dict):
        if not (isinstance(ma, dict) and isinstance(mb, dict)):
            raise DomainMismatch("cannot compare a sparse law with a dense vector")
        keys = set(ma) | set(mb)
        return sum(abs(ma.get(k, 0) - mb.get(k, 0)) for k in keys) / 2
    if da is not None and db is not None and da != db:
        raise DomainMismatch(f"domains {da} and {db} differ")
    if ma.shape != mb.shape:
        raise DomainMismatch(f"lengths {ma.shape} and {mb.shape} differ")
    if ma.dtype == object or mb.dtype == object:
        return sum(abs(x - y) for x, y in zip(ma, mb)) / 2
    return 0.5 * float(np.abs(ma - mb).sum())


def _rows(system, block):
    space = system.state_space()
    kernel = system.kernel(block)
    index = space.index
    for x in space.configs:
        yield [(index[y], p) for y, p in kernel.distribution(x).items()]


def _check_dense(space):
    if len(space) > DENSE_CAP:
        raise StateSpaceTooLarge(f"{len(space)} states exceed the dense cap {DENSE_CAP}")


def block_matrix(system, block, exact: bool = False):
    """Transition matrix of one block kernel over the system's domain.

    Float mode returns a CSR matrix; exact mode a dense object array of
    Fractions.
    """
    space = system.state_space()
    N = len(space)
    if exact:
        _check_dense(space)
        P = np.full((N, N), Fraction(0), dtype=object)
        for a, row in enumerate(_rows(system, block)):
            for b, p in row:
                P[a, b] = p
        return P
    data, ii, jj = [], [], []
    for a, row in enumerate(_rows(system, block)):
        for b, p in row:
            ii.append(a)
            jj.append(b)
            data.append(float(p))
    return sparse.csr_matrix((data, (ii, jj)), shape=(N, N))


def _sparse_rows(system, block) -> list:
    return [(a, row) for a, row in enumerate(_rows(system, block))]


def _times_rows(M, rows):
    """``M @ P`` for exact ``M`` and ``P`` given as sparse rows; costs
    ``nnz(P) * N`` Fraction operations instead of ``N**3``."""
    out = np.full(M.shape, Fraction(0), dtype=object)
    for c, row in rows:
        col = M[:, c]
        for b, p in row:
            out[:, b] += col * p
    return out


def _exact_identity(N):
    M = np.full((N, N), Fraction(0), dtype=object)
    for a in range(N):
        M[a, a] = Fraction(1)
    return M


def scan_matrix(system, schedule: BlockSchedule, exact: bool = False):
    """Ordered product of the block matrices, as a dense array."""
    space = system.state_space()
    _check_dense(space)
    N = len(space)
    if exact:
        M = _exact_identity(N)
        for block in schedule.blocks:
            M = _times_rows(M, _sparse_rows(system, block))
        return M
    M = np.eye(N)
    for block in schedule.blocks:
        M = np.asarray(M @ block_matrix(system, block))
    return M


def invariance_residual(system, block, exact: bool = True):
    """Largest entry of ``|pi P - pi|`` for one block kernel."""
    space = system.state_space()
    zero = Fraction(0) if exact else 0.0
    out = [zero] * len(space)
    for a, row in enumerate(_rows(system, block)):
        pa = space.pi[a] if exact else float(space.pi[a])
        if not pa:
            continue
        for b, p in row:
            out[b] += pa * (p if exact else float(p))
    pi = space.pi if exact else [float(p) for p in space.pi]
    return max(abs(o - p) for o, p in zip(out, pi))


def is_row_stochastic(M, tol=1e-12) -> bool:
    if M.dtype == object:
        return all(sum(row) == 1 for row in M) and all(v >= 0 for v in M.flat)
    return bool(np.all(M >= -tol) and np.allclose(M.sum(axis=1), 1.0, atol=tol))


@dataclass(frozen=True)
class MixResult:
    t: int
    curve: list  # curve[t] = max over starts of TV after t scans, t = 0..T


def _row_tv(M, pi):
    if M.dtype == object:
        return max(sum(abs(v - p) for v, p in zip(row, pi)) / 2 for row in M)
    return 0.5 * float(np.abs(M - pi).sum(axis=1).max())


def mixing_time(system, schedule: BlockSchedule, eps, backend: str = "float",
                t_max: int = 10_000, plateau_window: int = 50) -> MixResult:
    """Smallest ``t > 0`` with worst-start TV to pi at most ``eps``.

    Every configuration of the domain is a start.  If the TV curve stops
    moving above ``eps`` (unchanged within 1e-15 for ``plateau_window``
    scans, or exactly unchanged in the exact backend) or ``t_max`` is
    reached, :class:`NonErgodic` is raised carrying the curve.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    exact = backend == "exact"
    space = system.state_space()
    _check_dense(space)
    N = len(space)
    if exact:
        mats = [_sparse_rows(system, b) for b in schedule.blocks]
        pi = np.array(space.pi, dtype=object)
        M = _exact_identity(N)
        eps = Fraction(eps)
    else:
        mats = [block_matrix(system, b) for b in schedule.blocks]
        pi = np.array([float(p) for p in space.pi])
        M = np.eye(N)
    curve = [_row_tv(M, pi)]
    still = 0
    for t in range(1, t_max + 1):
        prev = M
        for P in mats:
            M = _times_rows(M, P) if exact else np.asarray(M @ P)
        curve.append(_row_tv(M, pi))
        if curve[-1] <= eps:
            return MixResult(t, curve)
        if exact:
            stalled = bool(np.all(M == prev))
        else:
            stalled = float(np.abs(M - prev).max()) < 1e-15
        still = still + 1 if stalled else 0
        if stalled and (exact or still >= plateau_window):
            raise NonErgodic(f"TV stalls at {float(curve[-1]):.6g} > eps after {t} scans", curve)
    raise NonErgodic(f"TV still {float(curve[-1]):.6g} > eps after t_max={t_max} scans", curve)


def worst_start_curve(system, schedule: BlockSchedule, t_max: int, exact: bool = False,
                      step_matrix=None) -> list:
    """Max-over-starts TV to pi after ``t = 0..t_max`` scans, with no early
    exit.  ``step_matrix`` replaces the scan matrix (e.g. a random-update
    comparator)."""
    space = system.state_space()
    _check_dense(space)
    N = len(space)
    S = scan_matrix(system, schedule, exact) if step_matrix is None else step_matrix
    if exact:
        pi = np.array(space.pi, dtype=object)
        M = np.full((N, N), Fraction(0), dtype=object)
        for a in range(N):
            M[a, a] = Fraction(1)
    else:
        pi = np.array([float(p) for p in space.pi])
        M = np.eye(N)
    curve = [_row_tv(M, pi)]
    for _ in range(t_max):
        M = M.dot(S) if exact else M @ S
        curve.append(_row_tv(M, pi))
    return curve


def theorem_bound(n: int, eps: float, alpha) -> int:
    """``ceil(log(n / eps) / (1 - alpha))`` for certified ``alpha < 1``."""
    return math.ceil(math.log(n / eps) / (1 - float(alpha)))


def apply_scan_to_function(system, schedule: BlockSchedule, f):
    """``P_scan f`` as a vector over the domain (right action, last block first)."""
    g = np.asarray(f, dtype=object if np.asarray(f).dtype == object else float)
    for block in reversed(schedule.blocks):
        if g.dtype == object:
            P = block_matrix(system, block, exact=True)
            g = P.dot(g)
        else:
            g = block_matrix(system, block) @ g
    return g


def site_deviations(system, f):
    """Per-site ``max |f(x) - f(y)|`` over ordered pairs differing only there."""
    space = system.state_space()
    f = np.asarray(f)
    out = []
    for i in range(system.n):
        a, b = space.discrepancy_index_pairs(i)
        if len(a) == 0:
            out.append(Fraction(0) if f.dtype == object else 0.0)
            continue
        diff = f[a] - f[b]
        out.append(max(abs(v) for v in diff) if f.dtype == object else float(np.abs(diff).max()))
    return out


def aggregate_deviation(system, f, weights=None):
    w = system.weights if weights is None else weights
    devs = site_deviations(system, f)
    if np.asarray(f).dtype == object:
        return sum(Fraction(wi) * d for wi, d in zip(w, devs))
    return float(sum(float(wi) * d for wi, d in zip(w, devs)))


def contraction_ratio(system, schedule: BlockSchedule, f, weights=None):
    """Weighted aggregate deviation of ``P_scan f`` divided by that of ``f``."""
    before = aggregate_deviation(system, f, weights)
    if before == 0:
        raise DegenerateFunctional("f has zero aggregate deviation")
    after = aggregate_deviation(system, apply_scan_to_function(system, schedule, f), weights)
    return after / before
