"""Command line front end.

Every subcommand writes CSV or JSON to stdout, or to ``--output``.  A
relative ``--output`` (or, without one, ``<subcommand>.<format>``) is placed
under ``$SCANMIX_OUTPUT_DIR`` when that variable is set.  The resolved
configuration, including the seed, is logged to stderr so a run can be
replayed; identical arguments give byte-identical output.

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from .coupling import STRATEGIES, rho_matrix, strategy_coupling
from .errors import NonErgodic, ScanMixError
from .exact import invariance_residual, mixing_time
from .fileio import load_blocks, load_graph, parse_config, parse_weights, read_text, render_config
from .ring import RingSystem, demonstrate_nonmixing
from .spins import SpinSystem, make_block
from .tree import TABLE1, table_csv, TreeBlockParams, evaluate_bounds, search_parameters, verify_table_row
from .dynamics import simulate

log = logging.getLogger("scanmix")

OUTPUT_DIR_ENV = "SCANMIX_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _num(v):
    """Exact values as ``p/q`` strings, floats unchanged."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    return float(v)


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def curve_rows(tv_series, n=None, alpha=None) -> list:
    """Rows ``t, max_tv, bound``; bound is ``n * alpha**t`` when ``alpha < 1``
    is certified and blank otherwise."""
    certified = alpha is not None and n is not None and alpha < 1
    rows = []
    for t, v in enumerate(tv_series):
        b = n * float(alpha) ** t if certified else None
        rows.append((t, float(v), b))
    return rows


def emit_curve(tv_series, n=None, alpha=None, fmt: str = "csv", path=None) -> str:
    """Plot-ready TV curve.  Columns are always ``t, max_tv, bound``.

    Returns the text and writes it to ``path`` when given.
    """
    rows = curve_rows(tv_series, n, alpha)
    if fmt == "csv":
        text = _csv([("t", "max_tv", "bound")] + [(t, repr(v), "" if b is None else repr(b)) for t, v, b in rows])
    elif fmt == "json":
        text = _json({"columns": ["t", "max_tv", "bound"], "rows": [list(r) for r in rows]})
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def read_curve(text: str, fmt: str = "csv") -> list:
    """Inverse of :func:`emit_curve`: list of ``(t, max_tv, bound or None)``."""
    if fmt == "json":
        return [tuple(r) for r in json.loads(text)["rows"]]
    rows = list(csv.reader(io.StringIO(text)))[1:]
    return [(int(t), float(v), float(b) if b else None) for t, v, b in rows]


# ---- argument types ----

def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _nonneg_int(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s}")
    return v


def _eps(s):
    try:
        v = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad eps {s!r}") from None
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return v


def _sites(s):
    try:
        return [int(t) for t in s.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad site list {s!r}") from None


# ---- system construction ----

def _add_system(p, ring=True):
    p.add_argument("--graph", help="graph file")
    p.add_argument("--blocks", help="blocks file (scan order)")
    p.add_argument("--q", type=_positive_int, help="number of colours")
    p.add_argument("--domain", choices=("omega", "omega+"), default="omega",
                   help="proper colourings only, or every assignment with zero mass off the proper ones")
    if ring:
        p.add_argument("--ring", type=_positive_int, metavar="N",
                       help="use the copy-shift ring on N sites instead of --graph/--blocks")
    p.add_argument("--cap", type=_positive_int, default=10**6, help="largest state space to enumerate")


def _system(args, need_blocks=True):
    ring_n = getattr(args, "ring", None)
    if args.q is None:
        raise UsageError("--q is required")
    if ring_n is not None:
        if args.graph or args.blocks:
            raise UsageError("--ring excludes --graph and --blocks")
        ring = RingSystem(ring_n, args.q, cap=args.cap)
        return ring, ring.schedule()
    if not args.graph or (need_blocks and not args.blocks):
        raise UsageError("--graph and --blocks are required" if need_blocks else "--graph is required")
    graph = load_graph(args.graph)
    system = SpinSystem(graph, args.q, restrict_to_proper=args.domain == "omega", cap=args.cap)
    schedule = load_blocks(args.blocks, graph) if need_blocks else None
    return system, schedule


def _spins_arg(value, n, q):
    """1-based spins given inline (``1,2,3``) or as a file."""
    text = read_text(value) if Path(value).is_file() else value.replace(",", " ")
    return parse_config(text, n, q)


# ---- subcommands ----

def cmd_simulate(args):
    system, schedule = _system(args)
    start = _spins_arg(args.start, system.n, system.q) if args.start else None
    traj = simulate(system, schedule, args.scans, args.seed, start=start)
    if args.format == "csv":
        head = ["scan_index"] + [f"spin_{s}" for s in range(system.n)]
        return _csv([head] + [[t] + render_config(x) for t, x in enumerate(traj)])
    return _json({"seed": args.seed, "scans": args.scans,
                  "trajectory": [render_config(x) for x in traj]})


def cmd_mix(args):
    system, schedule = _system(args)
    alpha = None
    if args.strategy:
        alpha = rho_matrix(system, schedule, args.strategy).alpha
    try:
        res = mixing_time(system, schedule, args.eps, backend=args.backend, t_max=args.t_max)
        status, t, curve, message = "mixed", res.t, res.curve, ""
    except NonErgodic as exc:
        status, t, curve, message = "non-ergodic", None, exc.curve, str(exc)
    rows = curve_rows(curve, system.n, alpha)
    if args.format == "csv":
        text = emit_curve(curve, system.n, alpha, "csv")
        return _csv([("status", status), ("t_mix", "" if t is None else t)]) + text
    return _json({"status": status, "t_mix": t, "message": message, "eps": str(args.eps),
                  "alpha": None if alpha is None else _num(alpha),
                  "columns": ["t", "max_tv", "bound"], "rows": [list(r) for r in rows]})


def cmd_invariance(args):
    system, schedule = _system(args)
    exact = args.backend == "exact"
    rows = []
    for k, block in enumerate(schedule.blocks):
        r = invariance_residual(system, block, exact=exact)
        rows.append((k, " ".join(map(str, block.sites)), _num(r) if exact else float(r)))
    if args.format == "csv":
        return _csv([("k", "sites", "residual")] + rows)
    return _json({"residuals": [{"k": k, "sites": s, "residual": r} for k, s, r in rows]})


def cmd_influence(args):
    system, schedule = _system(args)
    weights = None
    if args.weights and args.weights != "uniform":
        weights = parse_weights(read_text(args.weights), system.n)
    rep = rho_matrix(system, schedule, args.strategy, weights=weights, exact=args.backend == "exact")
    keys = sorted(rep.rho)
    witness = None
    if rep.witness is not None:
        x, y, k, i, j = rep.witness
        witness = {"k": k, "i": i, "j": j, "x": render_config(x), "y": render_config(y)}
    if args.format == "csv":
        rows = [("k", "i", "j", "rho")] + [(k, i, j, _num(rep.rho[k, i, j])) for k, i, j in keys]
        rows.append(("alpha", "", "", _num(rep.alpha)))
        rows.append(("alpha_weitz", "", "", _num(rep.alpha_weitz)))
        if witness is None:
            rows.append(("witness", "", "", ""))
        else:
            rows.append(("witness", witness["k"], witness["i"], witness["j"],
                         " ".join(map(str, witness["x"])), " ".join(map(str, witness["y"]))))
        return _csv(rows)
    return _json({"strategy": args.strategy,
                  "rho": [{"k": k, "i": i, "j": j, "rho": _num(rep.rho[k, i, j])} for k, i, j in keys],
                  "alpha": _num(rep.alpha), "alpha_weitz": _num(rep.alpha_weitz),
                  "witness": witness, "pairs_checked": rep.pairs_checked,
                  "cases": {str(c): m for c, m in sorted(rep.cases.items())}})


def cmd_couple(args):
    system, _ = _system(args, need_blocks=False)
    block = make_block(system.graph, args.block)
    x = _spins_arg(args.x, system.n, system.q)
    y = _spins_arg(args.y, system.n, system.q)
    diff = [s for s in range(system.n) if x[s] != y[s]]
    if len(diff) != 1:
        raise UsageError(f"--x and --y must differ at exactly one site, they differ at {diff}")
    coupling, case = strategy_coupling(system, args.strategy, block, x, y, diff[0])
    joint = sorted(coupling.joint.items())
    dis = coupling.disagreements(block.sites)
    if args.format == "csv":
        rows = [("x_out", "y_out", "mass")]
        rows += [(" ".join(map(str, render_config(a))), " ".join(map(str, render_config(b))), _num(m))
                 for (a, b), m in joint]
        rows += [("disagreement", j, _num(dis[j])) for j in block.sites]
        rows.append(("case", "" if case is None else case, ""))
        return _csv(rows)
    return _json({"strategy": args.strategy, "block": list(block.sites), "i": diff[0], "case": case,
                  "joint": [{"x": render_config(a), "y": render_config(b), "mass": _num(m)} for (a, b), m in joint],
                  "disagreement": {str(j): _num(dis[j]) for j in block.sites}})


def _bound_row(rep):
    p = rep.params
    return {"delta": p.delta, "h": p.h, "xi": str(p.xi), "q": p.q,
            "max_bound": float(rep.max_bound), "satisfied": rep.satisfied}


def cmd_tree_verify(args):
    if args.export_table:
        if args.format == "csv":
            return table_csv()
        return _json({"table": [{"delta": r.delta, "h": r.h, "xi": str(r.xi), "q": r.q,
                                 "single_site": r.single_site} for r in TABLE1.values()]})
    if args.all == (args.delta is not None):
        raise UsageError("give exactly one of --delta D and --all")
    deltas = sorted(TABLE1) if args.all else [args.delta]
    rows = [_bound_row(verify_table_row(d, args.q)) for d in deltas]
    return _table(rows, args.format)


def _table(rows, fmt):
    cols = ["delta", "h", "xi", "q", "max_bound", "satisfied"]
    if fmt == "csv":
        return _csv([cols] + [[repr(r[c]) if c == "max_bound" else r[c] for c in cols] for r in rows])
    return _json({"rows": rows})


def cmd_tree_search(args):
    found = search_parameters(args.delta, args.q, range(1, args.h_max + 1), args.den_cap)
    if found is None:
        if args.format == "csv":
            return _csv([("delta", "q", "status"), (args.delta, args.q, "none")])
        return _json({"delta": args.delta, "q": args.q, "status": "none"})
    row = _bound_row(evaluate_bounds(found))
    if args.format == "csv":
        return _table([row], "csv")
    return _json(dict(row, status="found"))


def cmd_ring_demo(args):
    ev = demonstrate_nonmixing(args.n, args.q, args.scans, args.seed, exact=args.exact, t_max=args.t_max)
    out = {
        "n": ev.n, "q": ev.q, "scans": ev.scans, "seed": ev.seed,
        "site0_values": [v + 1 for v in ev.site0_values],
        "site0_invariant": ev.site0_invariant,
        "alpha": _num(ev.alpha), "alpha_weitz": _num(ev.alpha_weitz),
    }
    if args.exact:
        out["tv_floor"] = _num(ev.tv_floor)
        out["tv_curve"] = [float(v) for v in ev.tv_curve]
        out["random_update_curve"] = [float(v) for v in ev.random_update_curve]
    return _json(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scanmix", description="Systematic-scan block dynamics for colourings.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at debug level")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="output file (default stdout)")

    p = sub.add_parser("simulate", help="run the block scan from a seed")
    _add_system(p)
    p.add_argument("--scans", type=_nonneg_int, required=True)
    p.add_argument("--seed", type=_nonneg_int, required=True)
    p.add_argument("--start", help="start spins, 1-based (file or comma list)")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("mix", help="exact worst-start TV curve and mixing time")
    _add_system(p)
    p.add_argument("--eps", type=_eps, required=True)
    p.add_argument("--backend", choices=("exact", "float"), default="float")
    p.add_argument("--t-max", type=_positive_int, default=10_000)
    p.add_argument("--strategy", choices=STRATEGIES, help="certify alpha with this coupling and add the bound column")
    common(p)
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("invariance-check", help="per-block residual |pi P - pi|")
    _add_system(p)
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    common(p)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("influence", help="influence matrix rho and alpha")
    _add_system(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="paper-edge")
    p.add_argument("--weights", default="uniform", help="weights file or 'uniform'")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    common(p)
    p.set_defaults(func=cmd_influence)

    p = sub.add_parser("couple", help="one coupled block update")
    _add_system(p, ring=False)
    p.add_argument("--block", type=_sites, required=True, help="block sites, e.g. '0,1'")
    p.add_argument("--x", required=True, help="first configuration, 1-based spins")
    p.add_argument("--y", required=True, help="second configuration, 1-based spins")
    p.add_argument("--strategy", choices=STRATEGIES, default="paper-edge")
    common(p)
    p.set_defaults(func=cmd_couple)

    p = sub.add_parser("tree-verify", help="check the tabulated tree-block parameters")
    p.add_argument("--delta", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--q", type=int, help="colours to check (default: the tabulated value)")
    p.add_argument("--export-table", action="store_true", help="write the table itself")
    common(p)
    p.set_defaults(func=cmd_tree_verify)

    p = sub.add_parser("tree-search", help="search (h, xi) for given delta and q")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--h-max", type=_positive_int, default=30)
    p.add_argument("--den-cap", type=_positive_int, default=64)
    common(p)
    p.set_defaults(func=cmd_tree_search)

    p = sub.add_parser("ring-demo", help="the ring whose scan never mixes")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--q", type=_positive_int, required=True)
    p.add_argument("--scans", type=_nonneg_int, required=True)
    p.add_argument("--seed", type=_nonneg_int, required=True)
    p.add_argument("--exact", action="store_true", help="also compute exact TV curves")
    p.add_argument("--t-max", type=_positive_int, default=100)
    common(p, fmt=False)
    p.set_defaults(func=cmd_ring_demo, format="json")
    return parser


def _config(args) -> dict:
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(vars(args).items())
            if k not in ("func", "verbose")}


def _destination(args):
    base = os.environ.get(OUTPUT_DIR_ENV)
    if args.output:
        out = Path(args.output)
        return out if out.is_absolute() or not base else Path(base) / out
    if base:
        return Path(base) / f"{args.command}.{args.format}"
    return None


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    log.info("config %s", json.dumps(_config(args), sort_keys=True))
    try:
        text = args.func(args)
        dest = _destination(args)
        if dest is None:
            stdout.write(text)
        else:
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_text(text, encoding="utf-8")
            log.info("wrote %s", dest)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"scanmix: error: {exc}", file=sys.stderr)
        return 2
    except (ScanMixError, ValueError, OSError) as exc:
        print(f"scanmix: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
