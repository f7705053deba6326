"""Command-line entry point: ``gridobs <subcommand> ...``.

Exit codes: 0 success, 1 domain failure (the result is still printed), 2 usage
or input-format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import analysis, fixtures, planar, reduction, render, strip
from .embed3d import embed3d as build_3d, faithful_dimensions
from .grid import (
    DecodeError,
    GridObsError,
    read_graph,
    read_representation,
    write_graph,
    write_representation,
)
from .visibility import verify, visibility_graph

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, default=_json_default))


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, separators=(",", ":"), default=_json_default)


def _window(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like 5x5, got {text!r}") from None


# -- handlers ----------------------------------------------------------------


def cmd_embed2d(a) -> int:
    g = read_graph(a.graph)
    rep, geo = planar.embed2d(g, a.mode, workers=a.threads)
    write_representation(a.out, rep)
    if a.geometry:
        _write_json(a.geometry, geo.to_obj())
    _emit({"n": g.n, "scale": geo.scale, "obstacles": rep.obstacle_count(), "bounds": rep.bounds})
    return EXIT_OK


def cmd_embed3d(a) -> int:
    g = read_graph(a.graph)
    if a.dry_run:
        info = faithful_dimensions(g)
        _emit({k: v for k, v in info.items() if k != "geometry"})
        return EXIT_OK
    rep, geo = build_3d(g, a.mode, workers=a.threads)
    write_representation(a.out, rep)
    if a.geometry:
        _write_json(a.geometry, geo.to_obj())
    _emit({"n": g.n, "scale": geo.scale, "obstacles": rep.obstacle_count(), "bounds": rep.bounds})
    return EXIT_OK


def cmd_verify(a) -> int:
    report = verify(read_representation(a.rep), read_graph(a.graph), workers=a.threads)
    _emit(report.to_obj())
    return EXIT_OK if report.matches else EXIT_FAIL


def cmd_visgraph(a) -> int:
    g = visibility_graph(read_representation(a.rep), workers=a.threads)
    if a.out:
        write_graph(a.out, g)
    else:
        _emit({"n": g.n, "edges": g.sorted_edges()})
    return EXIT_OK


def cmd_compress_strip(a) -> int:
    rep = read_representation(a.rep)
    out = strip.compress_strip(rep, a.height)
    write_representation(a.out, out)
    if a.stats:
        _emit(strip.strip_stats(rep, out, a.height, a.k))
    return EXIT_OK


_FIXTURE_PARAMS = {
    "path": ("n",),
    "cycle": ("n",),
    "complete": ("n",),
    "empty": ("n",),
    "matching": ("k",),
    "complete_bipartite": ("n", "m"),
    "complete_minus_matching": ("n", "k"),
    "empty_bipartite_complement": ("n", "m"),
    "binary_tree": ("h",),
    "figure_one": (),
}


def cmd_fixture(a) -> int:
    key = a.cls.replace("-", "_")
    if key not in _FIXTURE_PARAMS:
        raise _UsageError(f"unknown fixture class {a.cls!r}; known: {', '.join(sorted(_FIXTURE_PARAMS))}")
    params = []
    for name in _FIXTURE_PARAMS[key]:
        val = getattr(a, name)
        if val is None and name in ("k", "h"):
            val = a.n  # single-parameter classes accept --n as well
        if val is None:
            raise _UsageError(f"fixture {key} needs --{name}")
        params.append(val)
    g, rep = fixtures.fixture(key, *params)
    write_representation(a.out, rep)
    if a.graph_out:
        write_graph(a.graph_out, g)
    _emit({"class": key, "params": params, "n": g.n, "obstacles": rep.obstacle_count()})
    return EXIT_OK


def cmd_components(a) -> int:
    d = analysis.component_obstacles(read_representation(a.rep))
    obj = {"count": d.count, "obstacles": d.obstacle_count}
    if d.components is not None:
        obj["components"] = [sorted(map(list, c)) for c in d.components]
    _emit(obj)
    return EXIT_OK


def cmd_obsnum_exact(a) -> int:
    w, h = a.window
    res = analysis.obsnum_search(read_graph(a.graph), w, h, a.cap)
    _emit(res.to_obj())
    return EXIT_OK if res.value is not None else EXIT_FAIL


def cmd_check_c4(a) -> int:
    ok = analysis.crossing_c4_check(read_representation(a.rep), read_graph(a.graph))
    _emit({"ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reduce_gpse(a) -> int:
    make = reduction.gpse_points if a.variant == reduction.GPSE else reduction.oeps_points
    inst = make(a.n, a.k1, a.k2)
    obj = inst.to_obj()
    if a.out:
        _write_json(a.out, {k: obj[k] for k in ("p0", "p1", "p2")})
    _emit(obj)
    return EXIT_OK


def _read_points(path: str) -> list[tuple[int, int]]:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"invalid JSON: {exc}") from exc
    if isinstance(raw, dict):
        if not all(k in raw for k in ("p0", "p1", "p2")):
            raise DecodeError("points JSON needs p0, p1 and p2")
        raw = raw["p0"] + raw["p1"] + raw["p2"]
    pts = []
    for p in raw:
        if not isinstance(p, list) or len(p) != 2 or not all(isinstance(x, int) for x in p):
            raise DecodeError(f"bad point {p!r}")
        pts.append(tuple(p))
    return pts


def cmd_oeps_decide(a) -> int:
    res = reduction.oeps_search(read_graph(a.graph), _read_points(a.points), a.node_cap, a.threads)
    if a.out and res.representation is not None:
        write_representation(a.out, res.representation)
    _emit({"answer": res.answer, "explored": res.explored})
    return EXIT_OK


def cmd_render_svg(a) -> int:
    rep = read_representation(a.rep)
    g = read_graph(a.graph) if a.graph else None
    with open(a.out, "w", encoding="utf-8") as fh:
        fh.write(render.render_svg(rep, g))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridobs", description="Grid obstacle representations of graphs.")
    p.add_argument("--threads", type=int, default=1, help="worker threads for parallel stages")
    sub = p.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    modes = ["adaptive", "paper-faithful", "paper_faithful"]
    sp = add("embed2d", cmd_embed2d, "representation of a planar graph in Z^2")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=modes, default="adaptive")
    sp.add_argument("--out", required=True)
    sp.add_argument("--geometry")

    sp = add("embed3d", cmd_embed3d, "representation of any graph in Z^3")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=modes, default="adaptive")
    sp.add_argument("--out")
    sp.add_argument("--geometry")
    sp.add_argument("--dry-run", action="store_true", help="report faithful dimensions without building the grid")

    sp = add("verify", cmd_verify, "compare a representation's visibility graph with a graph")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--graph", required=True)

    sp = add("visgraph", cmd_visgraph, "visibility graph of a representation")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--out")

    sp = add("compress-strip", cmd_compress_strip, "shrink the width of a strip representation")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--stats", action="store_true")
    sp.add_argument("--k", type=float, default=strip.DEFAULT_K, help="constant in the width bound K*b^3*n")

    sp = add("fixture", cmd_fixture, "representation of a standard graph family")
    sp.add_argument("--class", dest="cls", required=True)
    for name in ("n", "m", "k", "h"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--out", required=True)
    sp.add_argument("--graph-out")

    sp = add("components", cmd_components, "component obstacles of a representation")
    sp.add_argument("--rep", required=True)

    sp = add("obsnum-exact", cmd_obsnum_exact, "exhaustive obstacle number inside a window")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--window", type=_window, default=(5, 5))
    sp.add_argument("--cap", type=int, default=4)

    sp = add("check-c4-invariant", cmd_check_c4, "splice crossing witness paths and check adjacency")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--graph", required=True)

    sp = add("reduce-gpse", cmd_reduce_gpse, "point sets of the hardness reduction")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k1", type=int, required=True)
    sp.add_argument("--k2", type=int, required=True)
    sp.add_argument("--variant", choices=[reduction.GPSE, reduction.OEPS], default=reduction.GPSE)
    sp.add_argument("--out")

    sp = add("oeps-decide", cmd_oeps_decide, "place a representation on given points, exhaustively")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--points", required=True)
    sp.add_argument("--node-cap", type=int, default=reduction.DEFAULT_NODE_CAP)
    sp.add_argument("--out")

    sp = add("render-svg", cmd_render_svg, "draw a 2D representation")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--graph", help="also draw one witness path per edge")
    sp.add_argument("--out", required=True)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.threads < 1:
        parser.print_usage(sys.stderr)
        print("gridobs: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "embed3d" and not args.dry_run and not args.out:
        print("gridobs: embed3d needs --out unless --dry-run is given", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gridobs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DecodeError, OSError) as exc:
        print(f"gridobs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GridObsError as exc:
        print(f"gridobs: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
