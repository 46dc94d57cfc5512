"""Command-line front end: generation, computation, verification, rendering.

Exit codes: 0 all assertions passed, 1 assertion failure (first witness
printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .boundary import C_DEFAULT, boundary_atlas, atlas_report, is_good_geodesic, make_good_geodesic
from .complex import (dumps_complex, is_k_large, is_locally_6_large, load_complex,
                      simply_connected_heuristic, INFINITY)
from .eucgeo import euclidean_geodesic, thread_vertex_path
from .generators import flat_parallelogram, flat_rectangle, gen_disc_with_degrees
from .metric import dist, directed_geodesic
from .suites import SUITE_NAMES, SuiteConfig, run_suite
from .svg import poly_path_points, render_svg


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--complex", dest="complex_path", help="complex file to load")
    p.add_argument("--from", dest="src", type=int, help="source vertex")
    p.add_argument("--to", dest="dst", type=int, help="target vertex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svg", dest="svg_path", help="write an SVG rendering here")
    p.add_argument("--C", dest="C", type=int, default=C_DEFAULT)
    p.add_argument("--cap", type=int, default=10000)
    p.add_argument("--json", action="store_true", help="structured output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="systolic",
        description="Combinatorial geodesics and verification suites on "
                    "systolic complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a complex file from a generator")
    _add_common(p)
    p.add_argument("--kind", choices=["parallelogram", "rectangle", "disc"],
                   required=True)
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--width", type=int, default=2)
    p.add_argument("--rings", type=int, default=2)
    p.add_argument("--out", required=True)

    p = sub.add_parser("check", help="flagness, local 6-largeness, collapsibility")
    _add_common(p)

    p = sub.add_parser("dist", help="combinatorial distance between two vertices")
    _add_common(p)

    p = sub.add_parser("dgeo", help="directed geodesic between two vertices")
    _add_common(p)

    p = sub.add_parser("egeo", help="Euclidean geodesic between two vertices")
    _add_common(p)

    p = sub.add_parser("good", help="make and verify a good geodesic")
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    _add_common(p)
    p.add_argument("--suite", choices=SUITE_NAMES, required=True)
    p.add_argument("--count", type=int, default=8)

    p = sub.add_parser("atlas", help="finite-radius boundary atlas at a basepoint")
    _add_common(p)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--D", dest="D", type=int, default=None)
    return parser


def _load(args) -> "FlagComplex":
    if not args.complex_path:
        raise SystemExit("--complex is required for this command")
    return load_complex(args.complex_path)


def _need_endpoints(args) -> tuple[int, int]:
    if args.src is None or args.dst is None:
        raise SystemExit("--from and --to are required for this command")
    return args.src, args.dst


def _emit_svg(args, X, paths=()) -> None:
    if not args.svg_path:
        return
    if X.coords is None:
        raise SystemExit("complex has no lattice coordinates; cannot render")
    with open(args.svg_path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(X.coords, X.edges(), X.triangles(), paths))
    print(f"svg written to {args.svg_path}")


def cmd_gen(args) -> int:
    if args.kind == "parallelogram":
        X = flat_parallelogram(args.height, args.width)
    elif args.kind == "rectangle":
        X = flat_rectangle(args.height, args.width)
    else:
        X = gen_disc_with_degrees(args.seed, rings=args.rings)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(dumps_complex(X))
    print(f"seed={args.seed} kind={args.kind} vertices={len(X)} "
          f"edges={X.edge_count()} -> {args.out}")
    _emit_svg(args, X)
    return 0


def cmd_check(args) -> int:
    X = _load(args)
    X.validate()
    loc = is_locally_6_large(X)
    collapse = simply_connected_heuristic(X)
    inf_large = is_k_large(X, INFINITY)
    report = {
        "vertices": len(X),
        "edges": X.edge_count(),
        "connected": X.is_connected(),
        "locally_6_large": loc.ok,
        "simply_connected": collapse,
        "infinity_large": inf_large.ok,
        "cycle_search_capped": loc.capped or inf_large.capped,
    }
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for k, v in report.items():
            print(f"{k}: {v}")
    if not loc.ok:
        print(f"witness: simplex {loc.witness[0]} has bad link cycle {loc.witness[1]}")
        return 1
    return 0


def cmd_dist(args) -> int:
    X = _load(args)
    u, v = _need_endpoints(args)
    print(dist(X, (u,), (v,)))
    return 0


def cmd_dgeo(args) -> int:
    X = _load(args)
    u, v = _need_endpoints(args)
    seq = directed_geodesic(X, (u,), frozenset((v,)))
    for k, simplex in enumerate(seq):
        print(f"{k}: {list(simplex)}")
    return 0


def cmd_egeo(args) -> int:
    X = _load(args)
    u, v = _need_endpoints(args)
    eg = euclidean_geodesic(X, (u,), (v,))
    for k, simplex in enumerate(eg.deltas):
        tag = "thin " if eg.profile.thin[k] else "thick"
        print(f"{k} ({tag}): {list(simplex)}")
    if args.svg_path:
        if eg.intervals:
            data = eg.intervals[0]
            disc_complex = data.disc.complex
            with open(args.svg_path, "w", encoding="utf-8") as fh:
                fh.write(render_svg(disc_complex.coords, disc_complex.edges(),
                                    disc_complex.triangles(),
                                    [poly_path_points(data.diagonal)]))
            print(f"svg written to {args.svg_path}")
        else:
            _emit_svg(args, X)
    return 0


def cmd_good(args) -> int:
    X = _load(args)
    u, v = _need_endpoints(args)
    good = make_good_geodesic(X, u, v, C=args.C)
    verified, witness = is_good_geodesic(X, good.path, C=args.C)
    print(f"path: {good.path}")
    print(f"certificate max: {good.max_certificate} (bound C+1={args.C + 1})")
    if verified is None:
        print(f"FAIL witness {witness}")
        return 1
    print("good: True")
    return 0


def cmd_verify(args) -> int:
    config = SuiteConfig(seed=args.seed, count=args.count, C=args.C, cap=args.cap)
    report = run_suite(args.suite, config)
    if args.json:
        print(json.dumps({"suite": report.name, "seed": report.seed,
                          "ok": report.ok, "lines": report.lines,
                          "failures": report.failures}, sort_keys=True, indent=2))
    else:
        sys.stdout.write(report.text())
    return 0 if report.ok else 1


def cmd_atlas(args) -> int:
    X = _load(args)
    if args.src is None:
        raise SystemExit("--from (basepoint) is required for atlas")
    kwargs = {"C": args.C, "cap": args.cap}
    if args.D is not None:
        kwargs["D"] = args.D
    atlas = boundary_atlas(X, args.src, args.radius, **kwargs)
    sys.stdout.write(atlas_report(atlas, as_json=args.json))
    return 0


_COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "dist": cmd_dist,
    "dgeo": cmd_dgeo,
    "egeo": cmd_egeo,
    "good": cmd_good,
    "verify": cmd_verify,
    "atlas": cmd_atlas,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, AssertionError) as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
