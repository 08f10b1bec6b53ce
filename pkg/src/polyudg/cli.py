"""Command-line entry point: ``polyudg build | chi | verify | render | catalog | paper-check``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chromatic import (
    DEFAULT_TIMEOUT,
    EXIT_INDETERMINATE,
    ColoringCertificate,
    IncompleteAssignmentError,
    Verdict,
    chromatic_number,
    export_cnf,
    k_colorable,
    verify_coloring,
)
from .constructions import CONSTRUCTIONS, ConstructionError, RunConfig, build_construction
from .graph_builder import EdgeMode, UnitGraph, edge_distribution
from .polygon_metric import Metric, check_vertex_closure
from .render import LAYERS, render_svg
from .vector_catalog import catalog

EXIT_USAGE = 2
EXIT_MISMATCH = 1


class UsageError(Exception):
    pass


def _metric(name: str) -> Metric:
    try:
        return Metric.parse(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def load_graph(path: str) -> UnitGraph:
    try:
        return UnitGraph.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a graph file ({exc.__class__.__name__}: {exc})") from None


def cmd_build(args) -> int:
    cfg = RunConfig(args.metric, args.construction, EdgeMode(args.mode) if args.mode else None,
                    Path(args.seeds) if args.seeds else None, args.threads)
    try:
        g = build_construction(cfg)
    except (ConstructionError, FileNotFoundError) as exc:
        raise UsageError(str(exc)) from None
    fmt = args.format
    if fmt == "json":
        _write(json.dumps(g.to_json()) + "\n", args.out)
    elif fmt == "dimacs":
        _write(g.to_dimacs(), args.out)
    elif fmt == "cnf":
        if args.k is None:
            raise UsageError("--format cnf needs --k")
        _write(export_cnf(g, args.k), args.out)
    else:
        _write(render_svg(g, args.layer), args.out)
    dist = ", ".join(f"{k}={v}" for k, v in edge_distribution(g).items() if v)
    print(f"{g.provenance}: {g.n} vertices, {g.m} edges" + (f" [{dist}]" if dist else ""),
          file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return 0


def cmd_chi(args) -> int:
    g = load_graph(args.graph)
    if args.format == "cnf":
        if args.k is None:
            raise UsageError("--format cnf needs --k")
        _write(export_cnf(g, args.k), args.out)
        return 0
    if args.k is not None:
        if args.k < 1:
            raise UsageError("--k must be at least 1")
        report = k_colorable(g, args.k, timeout=args.timeout_secs)
        payload = report.to_json()
        print(f"k={args.k}: {report.verdict.value} ({report.nodes} nodes, {report.wall_time:.2f}s)")
        code = report.exit_code
        cert = report.certificate
    else:
        res = chromatic_number(g, timeout=args.timeout_secs)
        payload = res.to_json()
        if res.chi is None:
            print("chromatic number undecided (timeout)")
            code, cert = EXIT_INDETERMINATE, None
        else:
            print(f"chromatic number: {res.chi}")
            code, cert = Verdict.SAT.exit_code, res.coloring.certificate if res.coloring else None
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    if args.cert and cert is not None:
        Path(args.cert).write_text(json.dumps(cert.to_json()) + "\n", encoding="utf-8")
    return code


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    try:
        obj = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
        cert = ColoringCertificate.from_json(obj.get("certificate") or obj)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.certificate}: not a certificate ({exc})") from None
    if cert.graph_hash and cert.graph_hash != g.canonical_hash():
        print("certificate was issued for a different graph")
        return EXIT_MISMATCH
    try:
        bad = verify_coloring(g, cert)
    except IncompleteAssignmentError as exc:
        print(f"invalid: {exc}")
        return EXIT_MISMATCH
    if bad:
        print(f"invalid: {len(bad)} monochromatic edges, first {bad[0]}")
        return EXIT_MISMATCH
    print(f"valid {cert.k}-colouring of {g.n} vertices")
    return 0


def cmd_render(args) -> int:
    g = load_graph(args.graph)
    _write(render_svg(g, args.layer), args.out)
    return 0


def cmd_catalog(args) -> int:
    _write(json.dumps(catalog(args.metric).to_json(), indent=1) + "\n", args.out)
    return 0


def cmd_paper_check(args) -> int:
    from .paper_check import PaperCheck

    metrics = [args.metric] if args.metric else None
    failed = []
    rows = []
    for row in PaperCheck(metrics, timeout=args.timeout_secs, external=not args.no_external).rows():
        print(row.line(), flush=True)
        rows.append(row)
        if not row.ok:
            failed.append(row)
    if args.out:
        Path(args.out).write_text(json.dumps([r.to_json() for r in rows], indent=1) + "\n", encoding="utf-8")
    print(f"{len(rows) - len(failed)}/{len(rows)} rows match")
    for row in failed:
        print(f"mismatch: {row.line()}")
    return EXIT_MISMATCH if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyudg", description="Unit-distance graphs in regular-polygon norms.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a graph and write it out")
    b.add_argument("--metric", type=_metric)
    b.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    b.add_argument("--seeds", help="seed JSON for --construction from-file")
    b.add_argument("--mode", choices=[m.value for m in EdgeMode])
    b.add_argument("--format", choices=["json", "dimacs", "cnf", "svg"], default="json")
    b.add_argument("--layer", choices=LAYERS, default="all", help="edge layer for svg output")
    b.add_argument("--k", type=int, help="colours, for cnf output")
    b.add_argument("--threads", type=int, default=1, help="worker processes for edge building")
    b.add_argument("--out", help="output path (default stdout)")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("chi", help="decide k-colourability or compute the chromatic number")
    c.add_argument("graph")
    c.add_argument("--k", type=int)
    c.add_argument("--timeout-secs", type=float, default=DEFAULT_TIMEOUT)
    c.add_argument("--threads", type=int, default=1, help="accepted for symmetry; the solver is single-threaded")
    c.add_argument("--format", choices=["json", "cnf"], default="json")
    c.add_argument("--out", help="report JSON path (or CNF path with --format cnf)")
    c.add_argument("--cert", help="certificate JSON path")
    c.set_defaults(func=cmd_chi)

    v = sub.add_parser("verify", help="check a colouring certificate against a graph")
    v.add_argument("graph")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw a graph file as SVG")
    r.add_argument("graph")
    r.add_argument("--layer", choices=LAYERS, default="all")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)

    k = sub.add_parser("catalog", help="dump a vector catalog as JSON")
    k.add_argument("--metric", type=_metric, required=True)
    k.add_argument("--out")
    k.set_defaults(func=cmd_catalog)

    pc = sub.add_parser("paper-check", help="recompute every published number and compare")
    pc.add_argument("--metric", type=_metric)
    pc.add_argument("--timeout-secs", type=float, default=DEFAULT_TIMEOUT)
    pc.add_argument("--no-external", action="store_true", help="skip the external SAT solver rows")
    pc.add_argument("--out", help="also write the rows as JSON")
    pc.set_defaults(func=cmd_paper_check)
    return p


def main(argv: list[str] | None = None) -> int:
    for m in Metric:
        check_vertex_closure(m)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"polyudg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
