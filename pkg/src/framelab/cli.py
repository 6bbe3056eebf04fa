"""Command-line front end: ``framelab <verb> ...``.

Exit status is 0 on success, 2 when an input violates a precondition
(malformed frame file, non-tight input to ``complement``, ...) and 1 on an
internal numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import io
from .constructions import FAMILIES, ConstructionSpec, construct
from .frames import CERTIFY_TOL, FrameError, angle_set, certify, repair_span
from .naimark import DEFAULT_TOL as NAIMARK_TOL
from .naimark import naimark_complement
from .optimize import SolverConfig, estimate_constants, minimize_coherence


def _read_frame(path):
    """Load a frame file, or the frame embedded in a complement/minimize report."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FrameError(f"cannot read frame file {path}: {exc}") from None
    if isinstance(doc, dict):
        for key in ("complement", "best_frame"):
            if key in doc and isinstance(doc[key], dict):
                doc = doc[key]
                break
    if not isinstance(doc, dict):
        raise FrameError(f"{path} does not contain a frame object")
    return io.frame_from_dict(doc)


def _emit(obj, args, always_print: bool = False):
    text = io.dumps(obj, pretty=args.pretty)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if always_print or not args.out:
        print(text)


def cmd_construct(args):
    spec = ConstructionSpec(
        family=args.family,
        m=args.m,
        n=args.n,
        field=args.field,
        seed=args.seed,
    )
    if spec.family in ("orthonormal", "simplex", "random_unit_norm", "random_tight") and spec.m is None:
        raise FrameError(f"--m is required for family {spec.family}")
    if spec.family in ("regular_polygon", "random_unit_norm", "random_tight") and spec.n is None:
        raise FrameError(f"--n is required for family {spec.family}")
    _emit(io.frame_to_dict(construct(spec)), args)


def cmd_certify(args):
    frame = _read_frame(args.frame)
    _emit(certify(frame, args.tol).to_dict(), args, always_print=True)


def cmd_analyze(args):
    frame = _read_frame(args.frame)
    out = certify(frame, args.tol).to_dict()
    angles = angle_set(frame)
    out["angle_set"] = {"values": list(angles.values), "multiplicities": list(angles.multiplicities)}
    _emit(out, args, always_print=True)


def cmd_complement(args):
    frame = _read_frame(args.frame)
    _emit(naimark_complement(frame, args.tol).to_dict(), args)


def cmd_repair(args):
    frame = _read_frame(args.frame)
    _emit(io.frame_to_dict(repair_span(frame, args.tol)), args)


def _solver_kwargs(args) -> dict:
    kw = {}
    if args.max_iters is not None:
        kw["max_iters"] = args.max_iters
    if args.stage_iters is not None:
        kw["stage_iters"] = args.stage_iters
    return kw


def cmd_minimize(args):
    cfg = SolverConfig(
        m=args.m,
        n=args.n,
        field=args.field,
        mode=args.mode,
        restarts=args.restarts,
        seed=args.seed,
        **_solver_kwargs(args),
    )
    report = minimize_coherence(cfg)
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iter", "best_coherence"])
            for i, v in enumerate(report.trace):
                w.writerow([i, repr(v)])
    _emit(report.to_dict(), args)


def cmd_estimate(args):
    mu_bar, mu, free, tight = estimate_constants(
        args.m, args.n, args.field, args.budget, args.seed, **_solver_kwargs(args)
    )
    _emit(
        {
            "m": args.m,
            "n": args.n,
            "field": args.field,
            "budget": args.budget,
            "seed": args.seed,
            "mu_bar_estimate": mu_bar,
            "mu_estimate": mu,
            "gap": mu - mu_bar,
            "welch": free.welch,
            "orthoplex": free.orthoplex,
            "mu_bar_minus_welch": mu_bar - free.welch,
            "mu_minus_welch": mu - free.welch,
            "unconstrained_best_frame": io.frame_to_dict(free.best_frame),
            "tight_best_frame": io.frame_to_dict(tight.best_frame),
        },
        args,
        always_print=True,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--out", help="write JSON output to this file")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    common.set_defaults(pretty=False)

    parser = argparse.ArgumentParser(prog="framelab", description="Construct, analyze and optimize unit-norm frames.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", parents=[common], help="emit a catalog or random frame")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--field", choices=("R", "C"), default="R")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    for name, func, helptext in (
        ("analyze", cmd_analyze, "certificate plus angle set"),
        ("certify", cmd_certify, "print the certificate"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("frame")
        p.add_argument("--tol", type=float, default=CERTIFY_TOL)
        p.set_defaults(func=func)

    p = sub.add_parser("complement", parents=[common], help="Naimark complement of a tight frame")
    p.add_argument("frame")
    p.add_argument("--tol", type=float, default=NAIMARK_TOL)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("repair-span", parents=[common], help="make a rank-deficient system span")
    p.add_argument("frame")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_repair)

    for name, func in (("minimize", cmd_minimize), ("estimate", cmd_estimate)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--field", choices=("R", "C"), default="R")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-iters", type=int)
        p.add_argument("--stage-iters", type=int)
        if name == "minimize":
            p.add_argument("--mode", choices=("unconstrained", "tight"), default="unconstrained")
            p.add_argument("--restarts", type=int, default=50)
            p.add_argument("--trace", help="write iter,best_coherence rows to this CSV file")
        else:
            p.add_argument("--budget", type=int, default=50, help="restarts per mode")
        p.set_defaults(func=func)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except FrameError as exc:
        print(f"framelab {args.verb}: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, ArithmeticError, ValueError) as exc:
        print(f"framelab {args.verb}: numerical failure: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
