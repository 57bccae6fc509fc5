"""Command line interface.

Exit codes: 0 success, 1 a verification failure was found, 2 invalid input
or arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace

from .exceptions import GenerationFailed, GeometryError, ParseError
from .generate import GenConfig, gen_nested_prismatoid
from .geom import DEFAULT_TOL
from .io import net_plan_dict, parse_instance, parse_net, serialize_instance, serialize_net
from .prismatoid import compute_band
from .rmcut import Scheme, plan_cut
from .svg import render_svg
from .unfold import unfold
from .verify import verify_net

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_generate(args) -> int:
    cfg = GenConfig(seed=args.seed, base_vertices=args.base_vertices,
                    top_vertices=args.base_vertices if args.prismoid else args.top_vertices,
                    prismoid_mode=args.prismoid)
    P = gen_nested_prismatoid(cfg)
    _write(args.out, serialize_instance(P))
    return EXIT_OK


def cmd_unfold(args) -> int:
    P = parse_instance(_read(args.input))
    band = compute_band(P)
    plan = plan_cut(P, band, Scheme(args.scheme))
    net = unfold(P, band, plan)
    _write(args.net, serialize_net(net))
    if args.svg:
        _write(args.svg, render_svg(net))
    print(f"{len(net.placed)} facets, {plan.case_tag.value}, scheme {plan.scheme.value}")
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = DEFAULT_TOL if args.tolerance is None else replace(DEFAULT_TOL, eps_verify=args.tolerance)
    P = parse_instance(_read(args.input), tol)
    raw = _read(args.net)
    net = parse_net(raw)
    stored = net_plan_dict(raw)
    band = compute_band(P, tol)
    plan = plan_cut(P, band, Scheme(stored.get("scheme", "auto")), tol)
    try:
        report = verify_net(P, band, plan, net, tol)
    except (KeyError, IndexError, ValueError) as exc:
        # the net does not describe this instance's facets
        print(json.dumps({"passed": False, "error": f"net does not match instance: {exc!r}"}))
        return EXIT_FAIL
    out = report.to_dict()
    plan_ok = not stored or stored == json.loads(json.dumps(plan.to_dict()))
    out["plan_matches"] = plan_ok
    print(json.dumps(out, indent=1))
    return EXIT_OK if report.passed and plan_ok else EXIT_FAIL


def cmd_fuzz(args) -> int:
    from .fuzz import fuzz
    if not 3 <= args.min_vertices <= args.max_vertices:
        _err("need 3 <= --min-vertices <= --max-vertices")
        return EXIT_INVALID
    t0 = time.perf_counter()
    report = fuzz(args.count, args.seed, args.min_vertices, args.max_vertices, args.prismoid,
                  args.dump_dir, scheme=Scheme(args.scheme), jobs=args.jobs)
    sys.stdout.write(report.to_json().decode())
    print(f"{report.passed}/{report.total} passed in {time.perf_counter() - t0:.1f}s",
          file=sys.stderr)
    return EXIT_OK if report.failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prismunfold", description="Edge-unfold nested prismatoids.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random nested instance")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--base-vertices", type=int, required=True)
    g.add_argument("--top-vertices", type=int, default=None)
    g.add_argument("--prismoid", action="store_true")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    u = sub.add_parser("unfold", help="unfold an instance into a net")
    u.add_argument("--in", dest="input", required=True)
    u.add_argument("--scheme", choices=[s.value for s in Scheme], default="auto")
    u.add_argument("--net", required=True)
    u.add_argument("--svg")
    u.set_defaults(func=cmd_unfold)

    v = sub.add_parser("verify", help="recompute the plan and check a net")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--net", required=True)
    v.add_argument("--tolerance", type=float, default=None, help="eps_verify")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fuzz", help="generate, unfold and verify many instances")
    f.add_argument("--count", type=int, required=True)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--min-vertices", type=int, default=3)
    f.add_argument("--max-vertices", type=int, default=12)
    f.add_argument("--prismoid", action="store_true")
    f.add_argument("--dump-dir")
    f.add_argument("--scheme", choices=[s.value for s in Scheme], default="auto")
    f.add_argument("--jobs", type=int, default=1)
    f.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate" and args.top_vertices is None and not args.prismoid:
        _err("--top-vertices is required unless --prismoid is given")
        return EXIT_INVALID
    try:
        return args.func(args)
    except (ParseError, GeometryError, GenerationFailed, OSError, ValueError) as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
