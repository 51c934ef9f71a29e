"""Command line: ``dualgrid {gen,embed,verify,render,demo}``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or an
internal invariant broke (error JSON on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import DualGridError, MalformedDocument
from .generate import SOLIDS, GenSpec, platonic, random_graph
from .graph import parse_graph
from .pipeline import draw, quad_for_drawing
from .placement import GridDrawing
from .render import RenderStyle, render_svg
from .report import VerificationReport
from .verify import check_angles, verify_all


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}", path=path) from exc


def _load_json(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path} is not JSON: {exc}", path=path) from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(args.kind, n=args.n, seed=args.seed, deletion_rate=args.rate, name=args.name)
    _write(args.out, _dump(random_graph(spec).to_json()))
    return 0


def cmd_embed(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    trace: list | None = [] if args.trace else None
    res = draw(
        g,
        bend_on=args.bend,
        engine=args.engine,
        check=not args.skip_3conn_check,
        outer_edge=tuple(args.outer_edge) if args.outer_edge else None,
        trace=trace,
        debug=args.debug,
    )
    _write(args.out, _dump(res.drawing.to_json()))
    if trace is not None:
        _write(args.trace, "".join(_dump(s) for s in trace))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    d = GridDrawing.from_json(_load_json(args.drawing))
    report = verify_all(quad_for_drawing(g, d), d)
    if args.trace:
        for line in _read(args.trace).splitlines():
            if line.strip():
                snap = json.loads(line)
                if snap["k"] < snap["m"]:
                    report.extend(check_angles(snap))
    _write(args.out, report.dumps() + "\n")
    return 0 if report.ok else 1


def cmd_render(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    d = GridDrawing.from_json(_load_json(args.drawing))
    q = quad_for_drawing(g, d)
    if not args.force:
        report = verify_all(q, d)
        if not report.ok:
            sys.stderr.write(report.dumps() + "\n")
            return 1
    style = RenderStyle(scale=args.scale, show_grid=args.grid)
    _write(args.out, render_svg(q, d, style))
    return 0


def cmd_demo(args: argparse.Namespace) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    g = platonic(args.solid)
    trace: list = []
    res = draw(g, engine=args.engine, trace=trace)
    report = verify_all(res.quad, res.drawing)
    for snap in trace:
        if snap["k"] < snap["m"]:
            report.extend(check_angles(snap))
    (out / "graph.json").write_text(_dump(g.to_json()))
    (out / "drawing.json").write_text(_dump(res.drawing.to_json()))
    (out / "report.json").write_text(report.dumps() + "\n")
    (out / f"{args.solid}.svg").write_text(render_svg(res.quad, res.drawing, RenderStyle(show_grid=True)))
    n = res.quad.n
    print(
        json.dumps(
            {
                "solid": args.solid,
                "n": n,
                "grid": 2 * n - 2,
                "ok": report.ok,
                "degeneracies": res.drawing.degeneracies,
                "dir": str(out),
            },
            sort_keys=True,
        )
    )
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dualgrid", description="Simultaneous grid drawing of a planar graph and its dual.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a test graph")
    p.add_argument("--kind", choices=("platonic", "triangulation", "sparsified"), default="triangulation")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rate", type=float, default=0.3, help="edge deletion rate for sparsified graphs")
    p.add_argument("--name", choices=SOLIDS, default="tetrahedron", help="solid for --kind platonic")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("embed", help="draw a graph and its dual")
    p.add_argument("graph")
    p.add_argument("--out")
    p.add_argument("--bend", choices=("primal", "dual"), default="primal")
    p.add_argument("--engine", choices=("reference", "offset"), default="offset")
    p.add_argument("--trace", metavar="FILE", help="write per-step frontier snapshots as JSON lines")
    p.add_argument("--skip-3conn-check", action="store_true")
    p.add_argument("--outer-edge", nargs=2, metavar=("A", "B"))
    p.add_argument("--debug", action="store_true", help="check invariants after every step")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check a drawing against its graph")
    p.add_argument("graph")
    p.add_argument("drawing")
    p.add_argument("--trace", metavar="FILE", help="also check the slope rules of a trace")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="write an SVG of a drawing")
    p.add_argument("graph")
    p.add_argument("drawing")
    p.add_argument("--out")
    p.add_argument("--scale", type=int, default=20)
    p.add_argument("--grid", action="store_true")
    p.add_argument("--force", action="store_true", help="render even if verification fails")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("demo", help="run a platonic solid end to end")
    p.add_argument("--out-dir", default="demo-out")
    p.add_argument("--solid", choices=SOLIDS, default="dodecahedron")
    p.add_argument("--engine", choices=("reference", "offset"), default="offset")
    p.set_defaults(func=cmd_demo)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DualGridError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True, default=str) + "\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(json.dumps({"error": "ValueError", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
