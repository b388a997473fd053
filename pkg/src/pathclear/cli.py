"""Command-line front end: build | query | bench | check | generate | serve."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .bench import run_bench
from .checks import run_checks
from .engine import IndexConfig, build_scene_index, path_clearance
from .errors import ClearanceError
from .generator import generate_scene
from .sceneio import (
    dump_scene,
    load_path,
    load_scene,
    report_to_dict,
    scene_to_dict,
)

log = logging.getLogger("pathclear")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def _setup_logging():
    level = os.environ.get("CLEARANCE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def cmd_generate(args) -> int:
    bbox = tuple(float(v) for v in args.bbox.split(","))
    if len(bbox) != 4:
        print("error: --bbox needs x0,y0,x1,y1", file=sys.stderr)
        return EXIT_BAD_INPUT
    scene = generate_scene(args.seed, args.m, args.target_n, bbox)
    doc = scene_to_dict(scene)
    if args.out:
        dump_scene(scene, args.out)
    else:
        json.dump(doc, sys.stdout)
        print()
    return EXIT_OK


def cmd_build(args) -> int:
    scene = load_scene(args.scene)
    index = build_scene_index(scene, IndexConfig(t_policy=args.t_policy))
    stats = index.stats
    doc = {
        "n": scene.n,
        "m": scene.m,
        "t_policy": args.t_policy,
        "t": stats.t,
        "build_ms": {k: round(v, 3) for k, v in stats.build_ms.items()},
        "sizes": {
            "d1_items": stats.d1_items,
            "d2_nodes": stats.d2_nodes,
            "d3_nodes": stats.d3_nodes,
            "d4_nodes": stats.d4_nodes,
            "d4_hull_vertices": stats.d4_hull_vertices,
        },
    }
    json.dump(doc, sys.stdout)
    print()
    return EXIT_OK


def cmd_query(args) -> int:
    scene = load_scene(args.scene)
    path, file_c = load_path(args.path)
    c = args.c if args.c is not None else file_c
    if c is None:
        print("error: clearance value required (--c or the path file's c)", file=sys.stderr)
        return EXIT_BAD_INPUT
    index = build_scene_index(scene, IndexConfig(t_policy=args.t_policy))
    report = path_clearance(index, path, c)
    json.dump(report_to_dict(report), sys.stdout)
    print()
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(v) for v in args.sizes.split(",")]
    policies = args.t_policies.split(",")
    seeds = [int(v) for v in args.seeds.split(",")]
    run_bench(
        sizes,
        policies,
        seeds,
        k=args.k,
        paths_per_scene=args.trials,
        include_baseline=not args.no_baseline,
        out=sys.stdout,
    )
    return EXIT_OK


def cmd_check(args) -> int:
    results, ok = run_checks(args.seed, args.trials)
    for r in results:
        status = "PASS" if r.failed == 0 else "FAIL"
        print(f"{status} {r.name}: {r.passed} passed, {r.failed} failed")
        for note in r.notes:
            print(f"    {note}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    scene = load_scene(args.scene)
    index = build_scene_index(scene, IndexConfig(t_policy=args.t_policy))
    app = create_app(index, ui_dir=args.ui)
    host, _, port = args.bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathclear",
        description="Path-clearance queries over polygonal obstacle scenes",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a random scene file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--target-n", type=int, required=True)
    p.add_argument("--bbox", default="0,0,100,100")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("build", help="build the index and print stats")
    p.add_argument("--scene", required=True)
    p.add_argument("--t-policy", default="n^1.5")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("query", help="answer a path clearance query")
    p.add_argument("--scene", required=True)
    p.add_argument("--path", required=True)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--t-policy", default="n^1.5")
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("bench", help="benchmark sweep, CSV on stdout")
    p.add_argument("--sizes", default="1000")
    p.add_argument("--t-policies", default="n,n^1.25,n^1.5,n2cap:67108864")
    p.add_argument("--seeds", default="1,2,3")
    p.add_argument("--k", type=int, default=16)
    p.add_argument("--trials", type=int, default=32, help="paths per scene")
    p.add_argument("--no-baseline", action="store_true")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("check", help="randomized oracle-equivalence suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("serve", help="HTTP query service for one scene")
    p.add_argument("--scene", required=True)
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.add_argument("--t-policy", default="n^1.5")
    p.add_argument("--ui", default=None, help="directory of explorer assets to serve at /")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ClearanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
