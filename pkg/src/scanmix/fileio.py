"""Plain-text inputs and the 1-based rendering of spins.

Graph file: first line ``n m``, then exactly ``m`` lines ``u v`` with
0-based sites.  Blocks file: one block per line, space-separated 0-based
sites, line order is scan order.  Weights file: one positive rational per
site (``3/4`` or ``0.5``), whitespace separated.  Start file: one spin per
site in ``1..q``, whitespace separated.  Blank lines are ignored; anything
else that does not fit the format is an error.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .spins import BlockSchedule, Graph, build_graph


def _lines(text: str) -> list:
    return [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()]


def _ints(tokens, no, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {no}: {what} must be integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise ParseError("graph file is empty")
    no, head = lines[0]
    if len(head) != 2:
        raise ParseError(f"line {no}: expected 'n m'")
    n, m = _ints(head, no, "n and m")
    if n < 0 or m < 0:
        raise ParseError(f"line {no}: negative count")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}")
    edges = []
    for no, tok in body:
        if len(tok) != 2:
            raise ParseError(f"line {no}: expected 'u v'")
        edges.append(_ints(tok, no, "edge endpoints"))
    return build_graph(n, edges)


def render_graph(graph: Graph) -> str:
    edges = graph.edges
    return "\n".join([f"{graph.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def parse_blocks(text: str, graph: Graph) -> BlockSchedule:
    blocks = []
    for no, tok in _lines(text):
        sites = _ints(tok, no, "block sites")
        if len(set(sites)) != len(sites):
            raise ParseError(f"line {no}: repeated site in block")
        for s in sites:
            if not 0 <= s < graph.n:
                raise ParseError(f"line {no}: site {s} outside 0..{graph.n - 1}")
        blocks.append(sites)
    if not blocks:
        raise ParseError("blocks file is empty")
    return BlockSchedule.from_sites(graph, blocks)


def render_blocks(schedule: BlockSchedule) -> str:
    return "".join(" ".join(map(str, b.sites)) + "\n" for b in schedule.blocks)


def parse_weights(text: str, n: int) -> tuple:
    tokens = [t for _, tok in _lines(text) for t in tok]
    if len(tokens) != n:
        raise ParseError(f"expected {n} weights, found {len(tokens)}")
    out = []
    for t in tokens:
        try:
            w = Fraction(t)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight {t!r}") from None
        if w <= 0:
            raise ParseError(f"weight {t} is not positive")
        out.append(w)
    return tuple(out)


def parse_config(text: str, n: int, q: int) -> tuple:
    """1-based spins in, 0-based configuration out."""
    tokens = [t for _, tok in _lines(text) for t in tok]
    if len(tokens) != n:
        raise ParseError(f"expected {n} spins, found {len(tokens)}")
    spins = _ints(tokens, 0, "spins")
    if any(not 1 <= s <= q for s in spins):
        raise ParseError(f"spins must lie in 1..{q}")
    return tuple(s - 1 for s in spins)


def render_config(config) -> list:
    """0-based configuration to 1-based spins."""
    return [int(s) + 1 for s in config]


def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path) -> Graph:
    return parse_graph(read_text(path))


def load_blocks(path, graph: Graph) -> BlockSchedule:
    return parse_blocks(read_text(path), graph)
