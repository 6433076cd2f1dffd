"""Command-line interface.

Output is CSV by default (fixed header per subcommand) or JSON with
``--json`` (``{"schema": 1, "command": ..., "rows": [...]}``). Real-valued
columns use 6 decimals, exact rationals print as ``num/den``.

Exit status: 0 success, 1 input or usage error, 2 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterable, Sequence

from . import __version__
from .bounds import BoundViolation, bound_degseq, bound_report, maxdeg_ratio
from .constructions import (
    SplitSpec,
    nested_graph,
    nested_mostar_star,
    nested_spec,
    split_graph,
    split_mostar_closed_form,
    split_mostar_star_closed_form,
)
from .graph_core import MAX_GRAPH6_ORDER, Graph, GraphFormatError, parse_edge_list, parse_graph6, write_graph6
from .indices import full_report
from .lp_certificates import (
    build_primal,
    check_dual_feasible,
    check_weak_duality,
    lemma1_certificate,
    solve_exact,
    to_lp_format,
)
from .search import LocalSearchConfig, corpus_scan, exhaustive_scan, local_search_max_mo


SCHEMA = 1

REPORT_COLUMNS = [
    "graph_id", "n", "m", "min_degree", "max_degree", "mo", "mo_star", "irr", "diameter",
    "bound_trivial", "bound_global", "bound_maxdeg", "bound_degseq", "lp_p_delta",
]
BOUNDS_COLUMNS = [
    "graph_id", "n", "m", "max_degree", "mo_star",
    "bound_trivial", "bound_global", "bound_maxdeg", "bound_degseq",
    "slack_trivial", "slack_global", "slack_maxdeg", "slack_degseq", "degseq_k", "degseq_s",
]
CERTIFY_COLUMNS = [
    "n", "delta", "p_delta", "identity_residual", "certificate_feasible", "violations",
    "opt_p", "opt_p_value", "gap", "weak_duality",
]
CONSTRUCT_COLUMNS = ["family", "n", "k", "levels", "mo_closed_form", "mo_star_closed_form", "mo_ratio", "mo_star_ratio", "graph6"]
SCAN_COLUMNS = ["n", "graphs_scanned", "max_mo", "max_mo_witness", "max_mo_star", "max_mo_star_witness", "violations", "violation_list"]
CORPUS_COLUMNS = SCAN_COLUMNS + ["parse_failures"]
SEARCH_COLUMNS = ["n", "restarts", "seed", "best_mo", "witness", "best_restart", "baseline_k", "baseline_mo", "ratio"]


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{round(v, 6) + 0.0:.6f}"  # + 0.0 turns -0.0 into 0.0
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def _json_value(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return round(v, 6) + 0.0
    return v


def _emit(out, command: str, columns: list[str], rows: list[dict], args) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "command": command}
        if args.timestamp:
            doc["timestamp"] = datetime.now(timezone.utc).isoformat()
        doc["rows"] = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.timestamp:
        buf.write(f"# timestamp {datetime.now(timezone.utc).isoformat()}\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    out.write(buf.getvalue())


def read_graphs(lines: Iterable[str]) -> list[Graph]:
    """graph6 lines, or edge-list blocks when the first content line starts with a digit."""
    lines = list(lines)
    content = [ln for ln in lines if ln.split("#", 1)[0].strip()]
    if not content:
        return []
    try:
        if content[0].lstrip()[0].isdigit():
            return list(parse_edge_list(lines))
        return [parse_graph6(ln.strip()) for ln in content]
    except (GraphFormatError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _graph_id(g: Graph, seq: int) -> str:
    return write_graph6(g) if g.n <= MAX_GRAPH6_ORDER else f"graph{seq}"


def _open_input(path: str):
    if path == "-":
        return sys.stdin.read().splitlines()
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def report_row(g: Graph, seq: int = 0) -> dict:
    rep = full_report(g)
    br = bound_report(g, rep.mo_star)
    return {
        "graph_id": _graph_id(g, seq),
        "n": rep.n,
        "m": rep.m,
        "min_degree": rep.delta_min,
        "max_degree": rep.delta_max,
        "mo": rep.mo,
        "mo_star": rep.mo_star,
        "irr": rep.irr,
        "diameter": rep.diameter if rep.connected else None,
        "bound_trivial": br.trivial,
        "bound_global": br.global_,
        "bound_maxdeg": br.maxdeg,
        "bound_degseq": br.degseq,
        "lp_p_delta": maxdeg_ratio(rep.delta_max / rep.n),
    }


def _cmd_compute(args) -> int:
    rows = [report_row(g, i) for i, g in enumerate(read_graphs(_open_input(args.input)))]
    if not args.json:
        for r in rows:
            if r["diameter"] is None:
                r["diameter"] = "UNREACHABLE"
    _emit(args.out, "compute", REPORT_COLUMNS, rows, args)
    return 0


def _cmd_bounds(args) -> int:
    rows = []
    for i, g in enumerate(read_graphs(_open_input(args.input))):
        br = bound_report(g)
        ds = bound_degseq(g)
        sl = br.slacks
        rows.append({
            "graph_id": _graph_id(g, i), "n": br.n, "m": br.m, "max_degree": br.max_degree,
            "mo_star": br.mo_star_actual, "bound_trivial": br.trivial, "bound_global": br.global_,
            "bound_maxdeg": br.maxdeg, "bound_degseq": br.degseq,
            "slack_trivial": sl["trivial"], "slack_global": sl["global"], "slack_maxdeg": sl["maxdeg"],
            "slack_degseq": sl["degseq"], "degseq_k": ds.k, "degseq_s": ds.s,
        })
    _emit(args.out, "bounds", BOUNDS_COLUMNS, rows, args)
    return 0


def _cmd_certify(args) -> int:
    n, delta = args.n, args.delta
    if not 1 <= delta <= n - 1:
        raise InputError(f"need 1 <= delta <= n-1, got n={n}, delta={delta}")
    cert = lemma1_certificate(n, delta)
    feas = check_dual_feasible(cert, n, delta)
    p = cert.p
    row = {
        "n": n,
        "delta": delta,
        "p_delta": p,
        "identity_residual": abs(2 * p**0.5 + n / delta * p - 1),
        "certificate_feasible": feas.feasible,
        "violations": len(feas.violations),
    }
    status = 0 if feas.feasible else 2
    if args.lp_out:
        with open(args.lp_out, "w", encoding="ascii") as fh:
            fh.write(to_lp_format(build_primal(n, delta)))
    if args.exact_simplex:
        sol = solve_exact(build_primal(n, delta))
        ok = feas.feasible and check_weak_duality(sol, cert, n, delta)
        row.update(opt_p=sol.objective, opt_p_value=float(sol.objective), gap=p - float(sol.objective), weak_duality=ok)
        if not ok:
            status = 2
    _emit(args.out, "certify-lp", CERTIFY_COLUMNS, [row], args)
    return status


def _cmd_construct(args) -> int:
    n = args.n
    if n < 1:
        raise InputError("n must be >= 1")
    if args.family == "split":
        k = args.k if args.k is not None else max(1, round(n / 3))
        if not 1 <= k <= n - 1:
            raise InputError(f"split family needs 1 <= k <= n-1, got k={k}")
        spec = SplitSpec(n, k)
        mo = split_mostar_closed_form(spec)
        mo_star = split_mostar_star_closed_form(spec) if 2 * k <= n else None
        row = {"family": "split", "n": n, "k": k, "mo_closed_form": mo, "mo_star_closed_form": mo_star,
               "mo_ratio": mo / n**3, "mo_star_ratio": None if mo_star is None else mo_star / n**3}
        g = split_graph(spec) if n <= MAX_GRAPH6_ORDER and not args.no_graph else None
    else:
        if args.k is not None:
            raise InputError("--k applies to the split family only")
        spec = nested_spec(n)
        mo_star = nested_mostar_star(spec)
        row = {"family": "nested", "n": n, "levels": ";".join(f"{a}:{b}" for a, b in spec.levels),
               "mo_star_closed_form": mo_star, "mo_star_ratio": mo_star / n**3}
        g = nested_graph(spec) if n <= MAX_GRAPH6_ORDER and not args.no_graph else None
    row["graph6"] = write_graph6(g) if g is not None else None
    _emit(args.out, "construct", CONSTRUCT_COLUMNS, [row], args)
    return 0


def _scan_row(res) -> dict:
    d = res.to_dict()
    d["violation_list"] = "|".join(f"{name}:{g6}" for name, g6 in res.violations)
    d["violations"] = len(res.violations)
    return d


def _cmd_enumerate(args) -> int:
    if not 1 <= args.n <= 7:
        raise InputError("enumerate supports 1 <= n <= 7")
    res = exhaustive_scan(args.n, workers=args.workers)
    _emit(args.out, "enumerate", SCAN_COLUMNS, [_scan_row(res)], args)
    return 2 if res.violations else 0


def _cmd_scan(args) -> int:
    try:
        res = corpus_scan(args.file)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc}") from exc
    rows = [_scan_row(res.by_order[n]) for n in sorted(res.by_order)]
    for r in rows:
        r["parse_failures"] = len(res.parse_failures)
    for lineno, msg in res.parse_failures:
        print(f"{args.file}:{lineno}: {msg}", file=sys.stderr)
    _emit(args.out, "scan", CORPUS_COLUMNS, rows, args)
    if res.violations:
        return 2
    return 1 if res.parse_failures else 0


def _cmd_search(args) -> int:
    try:
        config = LocalSearchConfig(args.n, args.restarts, args.seed, args.max_steps, args.orientation_hint)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res = local_search_max_mo(config, workers=args.workers)
    d = res.to_dict()
    _emit(args.out, "search", SEARCH_COLUMNS, [d], args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON instead of CSV")
    common.add_argument("--timestamp", action="store_true", help="include a run timestamp (breaks byte-identity)")

    parser = _Parser(prog="mostar", description="Mostar index, Mo* bounds, LP certificates and extremal graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", parents=[common], help="indices and bounds per input graph")
    p.add_argument("input", nargs="?", default="-", help="graph6 or edge-list file ('-' = stdin)")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("bounds", parents=[common], help="bound values and slack per input graph")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("certify-lp", parents=[common], help="closed-form dual certificate for (n, Delta)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--exact-simplex", action="store_true", help="also solve the primal exactly")
    p.add_argument("--lp-out", metavar="PATH", help="write the primal in CPLEX LP format")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("construct", parents=[common], help="split or nested extremal graphs")
    p.add_argument("--family", choices=["split", "nested"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="clique size for the split family (default round(n/3))")
    p.add_argument("--no-graph", action="store_true", help="closed-form values only")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive scan of all labeled graphs of order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=None, help="default: $MOSTAR_THREADS or 1")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("scan", parents=[common], help="scan a graph6 corpus file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("search", parents=[common], help="edge-flip hill climbing for large Mo")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--orientation-hint", action="store_true", help="break ties toward zero-out/zero-in pairs")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_search)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.out = out if out is not None else sys.stdout
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"mostar: error: {exc}", file=sys.stderr)
        return 1
    except (BoundViolation, AssertionError) as exc:
        print(f"mostar: invariant violation: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
