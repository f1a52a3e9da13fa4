"""Command-line surface: density checks, complex building, persistence,
queries, strips, certification, comparison bounds, scenario reproduction,
and SVG plots.

Exit codes: 0 success, 2 validation failure, 1 internal error, 64 usage.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io as bio
from .certify import blind_strips, classify, equality_certificate, sandwich
from .compare import pseudodistance_bound
from .filtration import FilteringFunction, modulus, sublevel_filtration
from .geometry import (
    ReferenceShape,
    cech_nerve,
    check_density_near,
    check_density_on,
    dual_complex,
    precondition_general_position,
)
from .oracle import raster_ball_union_persistence
from .persistence import pbn_query_1d, reduce_filtration
from .plot import plot_regions
from .scenarios import SCENARIOS, jitter_seed, run_scenario

USAGE_EXIT = 64
VALIDATION_EXIT = 2
INTERNAL_EXIT = 1


def _outdir(args) -> str:
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    return out


def _write(args, name: str, text: str) -> str:
    path = os.path.join(_outdir(args), name)
    bio.write_text(path, text)
    return path


def _cmd_density_check(args) -> int:
    cover = bio.read_cover(args.cover)
    shape = ReferenceShape.from_points(bio.read_points(args.shape).points,
                                       spacing=args.shape_spacing)
    rep = (check_density_near if cover.offset is not None else check_density_on)(cover, shape)
    payload = {
        "passed": rep.passed,
        "max_gap": rep.max_gap,
        "margin": rep.margin,
        "reason": rep.reason,
    }
    text = bio.dumps_json(payload)
    sys.stdout.write(text)
    if args.out:
        _write(args, "density_report.json", text)
    return 0 if rep.passed else VALIDATION_EXIT


def _cmd_build_complex(args) -> int:
    cover = bio.read_cover(args.cover)
    cloud = precondition_general_position(cover.landmarks, jitter_seed())
    cover = type(cover)(cloud, cover.radius, cover.tau, cover.offset)
    K = cech_nerve(cover, args.max_dim) if args.kind == "nerve" else dual_complex(cover)
    lines = [" ".join(map(str, s)) for s in sorted(K.simplices, key=lambda s: (len(s), s))]
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write(args, f"{args.kind}.txt", text)
    return 0


def _filtered_complex(args):
    cover = bio.read_cover(args.cover)
    cloud = precondition_general_position(cover.landmarks, jitter_seed())
    cover = type(cover)(cloud, cover.radius, cover.tau, cover.offset)
    f = bio.read_function(args.function)
    K = dual_complex(cover)
    return sublevel_filtration(K, f, cloud), f, cover


def _cmd_persist(args) -> int:
    F, _, _ = _filtered_complex(args)
    D = reduce_filtration(F)
    text = bio.diagram_to_csv(D)
    sys.stdout.write(text)
    if args.out:
        _write(args, "diagram.csv", text)
    return 0


def _cmd_pbn(args) -> int:
    D = bio.read_diagram(args.diagram)
    q = pbn_query_1d(D, args.degree, args.u, args.v)
    text = bio.query_to_json(q)
    sys.stdout.write(text)
    if args.out:
        _write(args, "pbn.json", text)
    return 0


def _cmd_strips(args) -> int:
    D = bio.read_diagram(args.diagram)
    strips = blind_strips(D, args.degree, args.width)
    text = bio.strips_to_json(strips)
    sys.stdout.write(text)
    if args.out:
        _write(args, "strips.json", text)
    return 0


def _cmd_certify(args) -> int:
    D = bio.read_diagram(args.diagram)
    f = bio.read_function(args.function)
    omega = modulus(f, args.eps)
    bound = sandwich(D, args.degree, args.u, args.v, omega, args.regime,
                     clamp=args.clamp)
    value = equality_certificate(D, args.degree, args.u, args.v, omega,
                                 args.regime) if not bound.degenerate else None
    payload = {
        "degree": args.degree,
        "u": [args.u],
        "v": [args.v],
        "lower": bound.lower,
        "upper": bound.upper,
        "regime": args.regime,
        "omega": omega.omega_scalar,
        "certified_value": value,
    }
    text = bio.dumps_json(payload)
    sys.stdout.write(text)
    if args.out:
        _write(args, "certificate.json", text)
    return 0


def _cmd_bound(args) -> int:
    qa = bio.query_from_json(open(args.rich, encoding="utf-8").read())
    qb = bio.query_from_json(open(args.poor, encoding="utf-8").read())
    cert = pseudodistance_bound(qa, qb)
    text = bio.certificate_to_json(cert)
    sys.stdout.write(text)
    if args.out:
        _write(args, "bound.json", text)
    return 0 if cert is not None and cert.useful else VALIDATION_EXIT


def _cmd_plot(args) -> int:
    D = bio.read_diagram(args.diagram)
    strips = None
    if args.strips:
        strips = bio.strips_from_json(open(args.strips, encoding="utf-8").read())
    svg = plot_regions(D, strips, tuple(args.window), args.degree)
    if args.out:
        path = _write(args, "pbn.svg", svg)
        sys.stdout.write(path + "\n")
    else:
        sys.stdout.write(svg)
    return 0


def _cmd_reproduce(args) -> int:
    result = run_scenario(args.scenario)
    sys.stdout.write(result.report())
    if args.out:
        out = os.path.join(_outdir(args), result.name)
        os.makedirs(out, exist_ok=True)
        for name, text in result.artifacts.items():
            bio.write_text(os.path.join(out, name), text)
        bio.write_text(os.path.join(out, "report.txt"), result.report())
    return 0 if result.passed else VALIDATION_EXIT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ballpark",
        description="Certified persistent-Betti-number estimates from ball coverings.")
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("density-check", help="check the covering density gates")
    sp.add_argument("--cover", required=True)
    sp.add_argument("--shape", required=True, help="dense shape sample CSV")
    sp.add_argument("--shape-spacing", type=float, default=0.0)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_density_check)

    sp = sub.add_parser("build-complex", help="dual complex or nerve of a cover")
    sp.add_argument("--cover", required=True)
    sp.add_argument("--kind", choices=["dual", "nerve"], default="dual")
    sp.add_argument("--max-dim", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_build_complex)

    sp = sub.add_parser("persist", help="persistence diagram of the filtered dual complex")
    sp.add_argument("--cover", required=True)
    sp.add_argument("--function", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_persist)

    sp = sub.add_parser("pbn", help="query a persistence diagram")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--u", type=float, required=True)
    sp.add_argument("--v", type=float, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_pbn)

    sp = sub.add_parser("strips", help="blind strips of a diagram")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--width", type=float, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_strips)

    sp = sub.add_parser("certify", help="sandwich bounds and equality certificates")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--function", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--u", type=float, required=True)
    sp.add_argument("--v", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True,
                    help="sampling scale: radius, or radius plus offset")
    sp.add_argument("--regime", choices=["on-manifold", "near-manifold", "dual-shape"],
                    default="on-manifold")
    sp.add_argument("--clamp", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("bound", help="pseudodistance lower bound from two queries")
    sp.add_argument("--rich", required=True, help="query JSON with the larger value")
    sp.add_argument("--poor", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_bound)

    sp = sub.add_parser("plot", help="SVG of PBN regions and strips")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--strips")
    sp.add_argument("--degree", type=int, default=0)
    sp.add_argument("--window", type=float, nargs=4, required=True,
                    metavar=("U0", "U1", "V0", "V1"))
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_plot)

    sp = sub.add_parser("reproduce", help="run a shipped scenario")
    sp.add_argument("scenario", choices=sorted(SCENARIOS))
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_reproduce)

    return p


_COMMANDS = ("density-check", "build-complex", "persist", "pbn", "strips",
             "certify", "bound", "plot", "reproduce")


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    if argv[0] in ("-h", "--help"):
        parser.print_help()
        return 0
    if argv[0] not in _COMMANDS:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return VALIDATION_EXIT
    except Exception as exc:  # pragma: no cover - internal faults
        sys.stderr.write(f"internal error: {exc}\n")
        return INTERNAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
