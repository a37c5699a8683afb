"""Small test systems shared by the unit and acceptance tests."""
import itertools

import numpy as np

from scanmix.spins import BlockSchedule, SpinSystem, build_graph, complete_graph, cycle_graph, path_graph


def padded_tree_block(kind: str, size: int, delta: int):
    """A path or star block of ``size`` sites, a discrepancy site ``u``
    hanging off one end (a leaf for stars), and pendant boundary sites
    raising every block site to degree ``delta``.

    Returns ``(graph, block_sites, u)``; block sites are ``0..size-1``.
    """
    if kind == "path":
        edges = [(s, s + 1) for s in range(size - 1)]
    elif kind == "star":
        edges = [(0, s) for s in range(1, size)]
    else:
        raise ValueError(kind)
    u = size
    attach = 0 if kind == "path" or size == 1 else size - 1
    edges.append((attach, u))
    deg = [0] * (size + 1)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if max(deg[:size]) > delta:
        raise ValueError("block already exceeds delta")
    nxt = size + 1
    for s in range(size):
        while deg[s] < delta:
            edges.append((s, nxt))
            deg[s] += 1
            nxt += 1
    return build_graph(nxt, edges), list(range(size)), u


def boundary_pairs(graph, block_sites, u, q, limit=None, seed=0):
    """Boundary colourings ``(x, y)`` differing only at ``u``; block spins are 0.

    Boundary sites are pendants (pairwise non-adjacent), so any colours are
    admissible off the block.  All pairs are listed when there are at most
    ``limit``; otherwise ``limit`` of them are drawn with a fixed seed.
    """
    boundary = [s for s in range(graph.n) if s not in block_sites and s != u]
    total = q ** len(boundary) * q * (q - 1)
    if limit is None or total <= limit:
        for colours in itertools.product(range(q), repeat=len(boundary)):
            for a in range(q):
                for b in range(q):
                    if a != b:
                        yield _pair(graph.n, boundary, colours, u, a, b)
        return
    rng = np.random.default_rng(seed)
    for _ in range(limit):
        colours = rng.integers(q, size=len(boundary))
        a, b = rng.choice(q, size=2, replace=False)
        yield _pair(graph.n, boundary, colours, u, int(a), int(b))


def _pair(n, boundary, colours, u, a, b):
    x = [0] * n
    for s, c in zip(boundary, colours):
        x[s] = int(c)
    y = list(x)
    x[u], y[u] = a, b
    return tuple(x), tuple(y)


K4_MINUS_E = build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
PAW = build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
STAR3 = build_graph(4, [(0, 1), (0, 2), (0, 3)])


def certified_systems():
    """(name, system, schedule, strategy) for small systems where the
    computed alpha is expected below one."""
    edge = lambda g: BlockSchedule.edges(g)
    site = lambda g: BlockSchedule.single_sites(g)
    rows = [
        ("P3 q4 edges", path_graph(3), 4, edge, "paper-edge"),
        ("P3 q5 sites", path_graph(3), 5, site, "maximal-site"),
        ("P4 q5 edges", path_graph(4), 5, edge, "paper-edge"),
        ("P5 q4 edges", path_graph(5), 4, edge, "paper-edge"),
        ("P6 q4 edges", path_graph(6), 4, edge, "paper-edge"),
        ("C4 q4 edges", cycle_graph(4), 4, edge, "paper-edge"),
        ("C4 q5 sites", cycle_graph(4), 5, site, "maximal-site"),
        ("C5 q4 edges", cycle_graph(5), 4, edge, "paper-edge"),
        ("C6 q4 edges", cycle_graph(6), 4, edge, "paper-edge"),
        ("K3 q4 edges", complete_graph(3), 4, edge, "paper-edge"),
        ("K3 q6 sites", complete_graph(3), 6, site, "maximal-site"),
        ("star q5 edges", STAR3, 5, edge, "paper-edge"),
        ("K4-e q5 edges", K4_MINUS_E, 5, edge, "paper-edge"),
        ("paw q5 edges", PAW, 5, edge, "paper-edge"),
        ("P4 q5 min-hamming", path_graph(4), 5, edge, "min-hamming"),
    ]
    for name, g, q, sched, strategy in rows:
        yield name, SpinSystem(g, q), sched(g), strategy
