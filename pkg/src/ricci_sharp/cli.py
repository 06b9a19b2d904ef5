"""Command-line interface: ``ricci-sharp <command> ...``.

Exit codes: 0 success (a non-sharp verdict is still success), 1 failed
internal check or classification mismatch, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .antitree import (
    AffinenessError,
    cross_validate,
    scan_even_diameter,
    iter_even_range,
    scan_odd_small,
    verify_family_lemmas,
)
from .curvature import curvature_sweep
from .exact import parse_rational
from .graphs import GraphError, generate, read_edge_list, write_edge_list
from .sharpness import is_bm_sharp, labeled_graph, verify_diameter2_classification

SCHEMA = "ricci-sharp/1"
FULL_RANGE = (8, 10000)
DECIMAL_NOTE = "keys ending in _approx are floating-point approximations"
APPROX_KEYS = ("min_curvature", "bound", "kappa_p", "kappa_lly", "idleness", "value")


class UsageError(Exception):
    pass


def _approx(obj):
    """Add ``<key>_approx`` floats next to the rational fields named in APPROX_KEYS."""
    if isinstance(obj, dict):
        out = {}
        for key, value in obj.items():
            out[key] = _approx(value)
            if key in APPROX_KEYS and isinstance(value, str):
                out[f"{key}_approx"] = float(parse_rational(value))
        return out
    if isinstance(obj, list):
        return [_approx(v) for v in obj]
    return obj


def _emit(args, command: str, payload: dict, text: str) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "command": command, **payload}
        if getattr(args, "decimal", False):
            doc = _approx(doc)
            doc["approximate_fields"] = DECIMAL_NOTE
        print(json.dumps(doc, indent=2))
    else:
        print(text)


def _load_graph(args):
    if bool(args.graph) == bool(args.family):
        raise UsageError("give exactly one of --graph or --family")
    if args.graph:
        return read_edge_list(args.graph)
    return generate(args.family)


def _add_graph_source(p):
    p.add_argument("--graph", help="edge-list file ('n <count>' header, then 'u v' lines)")
    p.add_argument("--family", help='family expression, e.g. "AT:1,3,3,1" or "CP:3*CP:3"')


def _add_output(p, decimal=True):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if decimal:
        p.add_argument("--decimal", action="store_true",
                       help="add approximate float fields next to exact rationals (JSON only)")


def cmd_curvature(args) -> int:
    G = _load_graph(args)
    report = curvature_sweep(G, jobs=args.jobs, keep_transport=args.explain)
    if args.dump_graph:
        write_edge_list(G, args.dump_graph, comment=args.family or Path(args.graph).name)
    _emit(args, "curvature", report.to_json(G, explain=args.explain), report.table(G))
    return 0


def cmd_sharp(args) -> int:
    G = _load_graph(args)
    verdict = is_bm_sharp(G, jobs=args.jobs)
    text = (
        f"sharp: {'yes' if verdict.is_sharp else 'no'}\n"
        f"min kappa_LLY = {verdict.to_json()['min_curvature']}\n"
        f"diameter = {verdict.diameter}, bound 2/diam = {verdict.to_json()['bound']}\n"
        f"witness edge = {verdict.witness_edge}"
    )
    _emit(args, "sharp", verdict.to_json(), text)
    return 0


def cmd_classify(args) -> int:
    report = verify_diameter2_classification(args.n, jobs=args.jobs)
    if args.dump_mismatches and report.mismatches:
        out = Path(args.dump_mismatches)
        out.mkdir(parents=True, exist_ok=True)
        for m in report.mismatches:
            write_edge_list(labeled_graph(args.n, m["index"]), out / f"mismatch_n{args.n}_{m['index']}.txt",
                            comment=f"classification mismatch n={args.n} index={m['index']}")
    lines = [
        f"n = {report.n}: scanned {report.graphs_scanned} labeled graphs",
        f"diameter 2: {report.diameter2_count}",
        f"sharp: {report.sharp_count}",
    ]
    lines += [f"  G({a},{b}): {c} labeled copies" for (a, b), c in report.sharp_types.items()]
    lines.append(f"mismatches: {len(report.mismatches)}")
    _emit(args, "classify", report.to_json(), "\n".join(lines))
    return 1 if report.mismatches else 0


def _family_lines(result, max_b):
    lines = [result.describe()]
    if result.kind == "family" and max_b:
        t = result.parameters.smallest
        while t <= max_b:
            if t in result.parameters:
                lines.append(f"  t = {t}: {result.instantiate(t)}")
            t += 1
    return lines


def _scan_lines(r, args) -> list:
    lines = _family_lines(r, args.max_b)
    if args.trace:
        lines += [f"    a_{k} = {f}" for k, f in r.trace]
    for cand in r.region:
        mark = "sharp" if cand["is_sharp"] else "fails " + ",".join(cand["failing_loci"])
        lines.append(f"    AT({','.join(map(str, cand['sequence']))}): min {cand['min_curvature']}  {mark}")
    return lines


def _stream_json(args, command: str, key: str, items) -> None:
    """Write the same bytes as ``_emit`` would for ``{key: list(items)}``, one item at a time."""
    head = json.dumps({"schema": SCHEMA, "command": command}, indent=2)
    out = sys.stdout
    out.write(head[:-2] + f',\n  "{key}": [')
    sep = "\n    "
    for item in items:
        if args.decimal:
            item = _approx(item)
        out.write(sep + json.dumps(item, indent=2).replace("\n", "\n    "))
        out.flush()
        sep = ",\n    "
    out.write("]" if sep == "\n    " else "\n  ]")
    if args.decimal:
        out.write(f',\n  "approximate_fields": {json.dumps(DECIMAL_NOTE)}')
    out.write("\n}\n")


def cmd_scan(args) -> int:
    if args.full_range:
        if args.from_ is not None or args.to is not None or args.diameter is not None:
            raise UsageError("--full-range fixes the range; drop --from/--to/--diameter")
        args.even, args.from_, args.to = True, FULL_RANGE[0], FULL_RANGE[1]
    if args.even:
        if args.diameter is not None:
            raise UsageError("--even and --diameter are exclusive")
        if args.from_ is None or args.to is None:
            raise UsageError("--even needs --from and --to")
        if args.from_ > args.to:
            raise UsageError(f"empty range {args.from_}..{args.to}")
        # streamed: long ranges would otherwise keep every trace alive
        results = iter_even_range(args.from_, args.to, jobs=args.jobs)
    elif args.diameter in (4, 6):
        results = [scan_even_diameter(args.diameter)]
    elif args.diameter in (3, 5):
        results = [scan_odd_small(args.diameter)]
    else:
        raise UsageError("give --even --from L1 --to L2, or --diameter 3|4|5|6")
    if args.json:
        _stream_json(args, "scan", "results", (r.to_json() for r in results))
    else:
        for r in results:
            print("\n".join(_scan_lines(r, args)), flush=True)
    return 0


def cmd_verify_lemmas(args) -> int:
    report = verify_family_lemmas(args.max_b, lp_max_b=args.lp_max_b)
    text = f"family lemmas for b <= {args.max_b}: {'pass' if report['passed'] else 'FAIL'}"
    _emit(args, "verify-lemmas", report, text)
    return 0 if report["passed"] else 1


def cmd_cross_validate(args) -> int:
    report = cross_validate(args.max_levels, args.max_size, all_edges=args.all_edges)
    text = (
        f"closed form vs transport: {report['instances']} edge checks, "
        f"{len(report['disagreements'])} disagreements"
    )
    _emit(args, "cross-validate", report, text)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ricci-sharp",
        description="Exact Ollivier-Ricci curvature and Bonnet-Myers sharpness on finite graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    jobs_default = os.cpu_count() or 1

    p = sub.add_parser("curvature", help="curvature of every edge")
    _add_graph_source(p)
    _add_output(p)
    p.add_argument("--explain", action="store_true", help="attach transport plans and potentials")
    p.add_argument("--dump-graph", metavar="PATH", help="also write the graph as an edge list")
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("sharp", help="Bonnet-Myers sharpness verdict")
    _add_graph_source(p)
    _add_output(p)
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.set_defaults(func=cmd_sharp)

    p = sub.add_parser("classify", help="exhaustive diameter-2 classification check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dump-mismatches", metavar="DIR")
    p.add_argument("--jobs", type=int, default=jobs_default)
    _add_output(p, decimal=False)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="symmetrical antitree scans")
    p.add_argument("--even", action="store_true")
    p.add_argument("--from", dest="from_", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--diameter", type=int)
    p.add_argument("--max-b", type=int, default=0, help="list family members up to this b")
    p.add_argument("--trace", action="store_true", help="print propagated level forms")
    p.add_argument("--full-range", action="store_true",
                   help="even scan over L = 8..10000 (slow on one core; use --jobs)")
    p.add_argument("--jobs", type=int, default=jobs_default)
    _add_output(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-lemmas", help="diameter-4 and diameter-6 antitree families")
    p.add_argument("--max-b", type=int, required=True)
    p.add_argument("--lp-max-b", type=int, default=3)
    _add_output(p, decimal=False)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("cross-validate", help="closed-form antitree curvature vs transport")
    p.add_argument("--max-levels", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--all-edges", action="store_true")
    _add_output(p, decimal=False)
    p.set_defaults(func=cmd_cross_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"ricci-sharp: error: {exc}", file=sys.stderr)
        return 2
    except (AffinenessError, AssertionError, RuntimeError) as exc:
        print(f"ricci-sharp: internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
