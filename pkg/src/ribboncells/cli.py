"""Command-line front end: one binary with subcommands.

Exit codes: 0 success, 1 property failure, 2 usage error.  All randomness
is seedable; set RIBBONCELLS_CACHE to a directory to cache enumerated
class lists between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import permgraph, serialize
from .cells import cell_polytope
from .enumeration import (SizeGuardError, automorphisms, enumerate_cells,
                          enumerate_trivalent)
from .intersect import OrientationError, QueryError, intersection_number
from .model0 import INFINITY, PointConfig, QQi, full_map
from .permgraph import faces, genus, validate
from .stable import ContractionError, contract_set
from .suites import SUITE_NAMES, run_suite

CACHE_ENV = "RIBBONCELLS_CACHE"


def _load_graph(path: str) -> permgraph.StableRibbonGraph:
    text = Path(path).read_text()
    return permgraph.loads(text)


def _emit(args, payload_json: dict, payload_text: str):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload_json, indent=2, sort_keys=True))
    else:
        print(payload_text)


# -- inspect ---------------------------------------------------------------


def cmd_inspect(args) -> int:
    g = _load_graph(args.graph)
    violation = validate(g)
    report = {
        "half_edges": g.num_half_edges,
        "edges": g.num_edges,
        "vertices": len(g.vertices),
        "degrees": sorted(v.degree for v in g.vertices),
        "defects": list(g.defects),
        "stable": violation is None,
    }
    if violation is not None:
        report["violation"] = str(violation)
    else:
        ws = faces(g)
        report.update({
            "faces": len(ws),
            "face_degrees": {w.label: w.degree for w in ws},
            "genus": genus(g),
            "aut_order": automorphisms(g).order,
            "trivalent": g.is_trivalent(),
        })
    lines = [f"{k}: {v}" for k, v in report.items()]
    _emit(args, report, "\n".join(lines))
    if args.roundtrip:
        Path(args.roundtrip).write_text(permgraph.dumps(g, indent=2) + "\n")
    if args.dot:
        Path(args.dot).write_text(_dot_digest(g))
    return 0


def _dot_digest(g) -> str:
    # structural digraph only: one node per vertex, one arc per edge
    lines = ["digraph ribbon {"]
    for vi, v in enumerate(g.vertices):
        label = f"v{vi}" + (f" [{v.defect}]" if v.defect else "")
        lines.append(f'  v{vi} [label="{label}"];')
    for e in range(g.num_edges):
        a = g.vertex_of[2 * e]
        b = g.vertex_of[2 * e + 1]
        lines.append(f'  v{a} -> v{b} [label="e{e}", dir=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- contract ---------------------------------------------------------------


def cmd_contract(args) -> int:
    g = _load_graph(args.graph)
    edges = _parse_int_list(args.edges)
    result = contract_set(g, set(edges))
    text = permgraph.dumps(result, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


# -- enumerate ----------------------------------------------------------------


def _cache_dir() -> Path | None:
    path = os.environ.get(CACHE_ENV)
    return Path(path) if path else None


def cached_trivalent(g: int, n: int):
    cache = _cache_dir()
    if cache is not None:
        f = cache / f"trivalent_g{g}_n{n}.json"
        if f.exists():
            data = json.loads(f.read_text())
            return [permgraph.from_json_dict(d) for d in data["classes"]]
    classes = [c.graph for c in enumerate_trivalent(g, n)]
    if cache is not None:
        cache.mkdir(parents=True, exist_ok=True)
        payload = {"classes": [permgraph.to_json_dict(x) for x in classes]}
        (cache / f"trivalent_g{g}_n{n}.json").write_text(json.dumps(payload))
    return classes


def cmd_enumerate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    index = {"genus": args.genus, "faces": args.faces, "classes": []}
    if args.all_cells:
        summary = enumerate_cells(args.genus, args.faces)
        items = [(key, cls.graph) for key, cls in sorted(summary.classes.items())]
        index["boundary"] = [
            {"parent": pk.hex()[:16], "edge": e, "child": ck.hex()[:16]}
            for pk, e, ck in summary.boundary]
        index["top_cells"] = [k.hex()[:16] for k in summary.top_keys]
    else:
        items = [(c.key, c.graph) for c in enumerate_trivalent(args.genus, args.faces)]
    for i, (key, graph) in enumerate(items):
        name = f"class_{i:04d}.json"
        (out / name).write_text(permgraph.dumps(graph, indent=2) + "\n")
        index["classes"].append({
            "file": name,
            "key": key.hex()[:16],
            "edges": graph.num_edges,
            "aut_order": automorphisms(graph).order,
        })
    index["count"] = len(items)
    (out / "index.json").write_text(json.dumps(index, indent=2) + "\n")
    print(f"wrote {len(items)} classes to {out}")
    return 0


# -- cells ----------------------------------------------------------------


def cmd_cells(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    p = _parse_fraction_list(args.perimeters)
    summary = enumerate_cells(args.genus, args.faces)
    index = {"genus": args.genus, "faces": args.faces,
             "perimeters": [serialize.rat(x) for x in p], "cells": []}
    keys = {k: i for i, k in enumerate(sorted(summary.classes))}
    for key in sorted(summary.classes):
        cls = summary.classes[key]
        cell = cell_polytope(cls.graph, p)
        name = f"cell_{keys[key]:04d}.json"
        payload = serialize.cell_to_json(cell)
        payload["key"] = key.hex()[:16]
        payload["top"] = key in summary.top_keys
        (out / name).write_text(json.dumps(payload, indent=2) + "\n")
        index["cells"].append({
            "file": name, "key": key.hex()[:16], "dim": cell.dim,
            "empty": cell.is_empty, "rank_deficient": cell.rank_deficient})
    index["boundary"] = [
        {"parent": pk.hex()[:16], "edge": e, "child": ck.hex()[:16]}
        for pk, e, ck in summary.boundary]
    (out / "index.json").write_text(json.dumps(index, indent=2) + "\n")
    print(f"wrote {len(index['cells'])} cells to {out}")
    return 0


# -- intersect ----------------------------------------------------------------


def cmd_intersect(args) -> int:
    d = _parse_int_list(args.d)
    p = _parse_fraction_list(args.perimeters) if args.perimeters else None
    result = intersection_number(args.genus, d, p)
    if args.check_p_independence:
        q = result.query
        shifted = [x + Fraction(1, 97 + i) for i, x in enumerate(q.perimeters)]
        other = intersection_number(args.genus, d, shifted)
        if other.value != result.value:
            print(f"p-independence FAILED: {result.value} vs {other.value}",
                  file=sys.stderr)
            return 1
    if args.ledger:
        ledger = {
            "genus": args.genus,
            "exponents": d,
            "perimeters": [serialize.rat(x) for x in result.query.perimeters],
            "value": serialize.rat(result.value),
            "cells": [{
                "key": c.key.hex()[:16], "aut_order": c.aut_order,
                "empty": c.empty, "orientation": c.orientation,
                "coefficient": serialize.rat(c.coefficient),
                "chart_volume": serialize.rat(c.chart_volume),
                "contribution": serialize.rat(c.contribution),
            } for c in result.cells],
        }
        Path(args.ledger).write_text(json.dumps(ledger, indent=2) + "\n")
    _emit(args, {"value": serialize.rat(result.value)}, str(result.value))
    return 0


# -- model0 ----------------------------------------------------------------


def _parse_qqi(token: str) -> QQi | str:
    token = token.strip()
    if token in ("inf", "oo"):
        return INFINITY
    body = token[:-1] if token.endswith("i") else None
    if body is not None:
        # split a+bi / a-bi at the sign separating the parts
        for k in range(1, len(body)):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                return QQi.of(Fraction(body[:k]), Fraction(body[k:] or "1"))
        return QQi.of(0, Fraction(body or "1"))
    return QQi.of(Fraction(token), 0)


def cmd_model0(args) -> int:
    points = [_parse_qqi(t) for t in args.points.split(",")]
    cfg = PointConfig.create(points)
    out = []
    for i, pt in enumerate(full_map(cfg), start=1):
        out.append({"i": i, "coords": [str(c) for c in pt.coords]})
    print(json.dumps({"n": cfg.n, "maps": out}, indent=2))
    return 0


# -- check ----------------------------------------------------------------


def cmd_check(args) -> int:
    if args.jobs > 1 and args.suite == "all":
        import multiprocessing as mp

        with mp.Pool(min(args.jobs, len(SUITE_NAMES))) as pool:
            grouped = pool.starmap(
                run_suite, [(s, args.seed, args.cases) for s in SUITE_NAMES])
        reports = [r for group in grouped for r in group]
    else:
        reports = run_suite(args.suite, args.seed, args.cases)
    failed = False
    for r in sorted(reports, key=lambda x: x.suite):
        status = "ok" if r.ok else f"{len(r.failures)} FAILURES"
        print(f"{r.suite}: {r.cases} cases, {status} ({r.wall_time:.2f}s)")
        if not r.ok:
            failed = True
            for f in r.failures[:5]:
                print("  " + json.dumps(f))
    if args.report:
        Path(args.report).write_text(json.dumps(
            [r.to_json() for r in reports], indent=2) + "\n")
    return 1 if failed else 0


# -- parsing helpers ----------------------------------------------------------


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise SystemExit(2) from exc


def _parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise SystemExit(2) from exc


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ribboncells",
        description="Exact computations on ribbon graph cell complexes")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="digest of a graph JSON file")
    p.add_argument("graph")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--roundtrip", help="re-emit the parsed graph to this file")
    p.add_argument("--dot", help="write a structural digraph in DOT format")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("contract", help="contract an edge subset")
    p.add_argument("--graph", required=True)
    p.add_argument("--edges", required=True, help="comma-separated edge indices")
    p.add_argument("--out")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("enumerate", help="enumerate graph classes")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--faces", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--trivalent", action="store_true", default=True)
    mode.add_argument("--all-cells", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("cells", help="cell polytopes over fixed perimeters")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--faces", type=int, required=True)
    p.add_argument("--perimeters", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("intersect", help="exact intersection number")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--d", required=True, help="comma-separated exponents")
    p.add_argument("--perimeters")
    p.add_argument("--check-p-independence", action="store_true")
    p.add_argument("--ledger", help="write the per-cell ledger JSON here")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("model0", help="projective value vectors of a "
                                      "marked-point configuration")
    p.add_argument("--points", required=True,
                   help="comma-separated rational complex points, e.g. "
                        "'0,1,1/2+3i,inf'")
    p.set_defaults(func=cmd_model0)

    p = sub.add_parser("check", help="run a seeded property suite")
    p.add_argument("--suite", default="all",
                   choices=list(SUITE_NAMES) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for --suite all; output order is "
                        "deterministic regardless")
    p.add_argument("--report", help="write the suite report JSON here")
    p.set_defaults(func=cmd_check)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContractionError, QueryError, OrientationError, SizeGuardError,
            permgraph.InvalidGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
