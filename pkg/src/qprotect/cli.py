"""Command-line interface: sweeps, single runs, xi optimization, calibration,
and self-validation.

Exit status: 0 on success, 1 when validation fails, 2 on usage errors.
Angles are given in radians; multiples of pi are accepted as e.g. `2pi/3`.
Relative output paths resolve under $QPROTECT_OUT_DIR when it is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from pathlib import Path

from .channels import ChannelKind, make_channel
from .circuits import input_state, prep_circuit
from .estimation import Mode, fidelity_exact, fidelity_sampled, point_seed
from .optimize import calibrate_xi, optimize_xi
from .schemes import Scheme, resolve_scheme, run_protected
from .sweep import SweepConfig, TOOL_VERSION, run_sweep, serialize_curves
from .validate import run_all_checks

_ANGLE_RE = re.compile(r"^([+-]?\d*\.?\d*)\s*pi\s*(?:/\s*(\d*\.?\d+))?$")


def parse_angle(text: str) -> float:
    """Parse radians, accepting pi shorthand: '2pi/3', 'pi', '-pi/4', '0.5pi'."""
    s = text.strip().lower()
    m = _ANGLE_RE.match(s)
    if m:
        coeff_text, div_text = m.groups()
        if coeff_text in ("", "+"):
            coeff = 1.0
        elif coeff_text == "-":
            coeff = -1.0
        else:
            coeff = float(coeff_text)
        value = coeff * math.pi
        if div_text:
            value /= float(div_text)
        return value
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def parse_strength(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse strength {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"strength must lie in [0, 1], got {p}")
    return p


def parse_positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def parse_p_grid(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected start:stop:count, got {text!r}"
        )
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse grid {text!r}") from None
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be at least 1")
    if not (0.0 <= start <= stop <= 1.0):
        raise argparse.ArgumentTypeError("grid must satisfy 0 <= start <= stop <= 1")
    if count == 1:
        return (start,)
    step = (stop - start) / (count - 1)
    return tuple(start + step * k for k in range(count))


def parse_scheme(text: str) -> Scheme:
    try:
        return Scheme(text)
    except ValueError:
        names = ", ".join(s.value for s in Scheme)
        raise argparse.ArgumentTypeError(f"unknown scheme {text!r}; choose from {names}") from None


def parse_kind(text: str) -> ChannelKind:
    try:
        return ChannelKind(text)
    except ValueError:
        names = ", ".join(k.value for k in ChannelKind)
        raise argparse.ArgumentTypeError(f"unknown channel {text!r}; choose from {names}") from None


def parse_scheme_list(text: str) -> tuple[Scheme, ...]:
    if text.strip().lower() == "all":
        return tuple(Scheme)
    return tuple(parse_scheme(part.strip()) for part in text.split(","))


def parse_kind_list(text: str) -> tuple[ChannelKind, ...]:
    if text.strip().lower() == "all":
        return tuple(ChannelKind)
    return tuple(parse_kind(part.strip()) for part in text.split(","))


def resolve_out_path(path_text: str) -> Path:
    path = Path(path_text)
    base = os.environ.get("QPROTECT_OUT_DIR")
    if base and not path.is_absolute():
        return Path(base) / path
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qprotect",
        description=(
            "Density-matrix simulation of pre/post-processing unitary protection "
            "against identical single-qubit decoherence. Defaults: theta = 2pi/3, "
            "shots = 10000; register sizes of interest are n = 2 and n = 4."
        ),
    )
    parser.add_argument("--version", action="version", version=f"qprotect {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run fidelity-vs-strength curves")
    sweep.add_argument("--n", type=parse_positive_int, default=2)
    sweep.add_argument("--theta", type=parse_angle, default=2.0 * math.pi / 3.0)
    sweep.add_argument("--channels", type=parse_kind_list, default=tuple(ChannelKind))
    sweep.add_argument("--schemes", type=parse_scheme_list, default=tuple(Scheme))
    sweep.add_argument("--p-grid", type=parse_p_grid, default=parse_p_grid("0:1:21"))
    sweep.add_argument("--mode", choices=[m.value for m in Mode], default="exact")
    sweep.add_argument("--shots", type=parse_positive_int, default=10000)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    sweep.add_argument("--workers", type=parse_positive_int, default=1)
    sweep.add_argument(
        "--no-optimize-xi",
        action="store_true",
        help="use xi = 0 instead of per-strength optimization",
    )

    run = sub.add_parser("run", help="run one (scheme, channel, p) point and print F")
    run.add_argument("--scheme", type=parse_scheme, required=True)
    run.add_argument("--channel", type=parse_kind, required=True)
    run.add_argument("--p", type=parse_strength, required=True)
    run.add_argument("--n", type=parse_positive_int, default=2)
    run.add_argument("--theta", type=parse_angle, default=2.0 * math.pi / 3.0)
    run.add_argument("--mode", choices=[m.value for m in Mode], default="exact")
    run.add_argument("--shots", type=parse_positive_int, default=10000)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument(
        "--xi",
        type=parse_angle,
        default=None,
        help="collective angle; defaults to per-strength optimization for mixed schemes",
    )
    run.add_argument("--format", choices=["text", "json"], default="text")

    opt = sub.add_parser("optimize", help="exact xi optimization for a mixed scheme")
    opt.add_argument("--scheme", type=parse_scheme, required=True)
    opt.add_argument("--channel", type=parse_kind, required=True)
    opt.add_argument("--p", type=parse_strength, required=True)
    opt.add_argument("--n", type=parse_positive_int, default=2)
    opt.add_argument("--theta", type=parse_angle, default=2.0 * math.pi / 3.0)
    opt.add_argument("--grid-points", type=parse_positive_int, default=181)
    opt.add_argument("--format", choices=["text", "json"], default="text")

    cal = sub.add_parser("calibrate", help="sampled xi calibration curve")
    cal.add_argument("--scheme", type=parse_scheme, required=True)
    cal.add_argument("--channel", type=parse_kind, required=True)
    cal.add_argument("--p", type=parse_strength, required=True)
    cal.add_argument("--n", type=parse_positive_int, default=2)
    cal.add_argument("--theta", type=parse_angle, default=2.0 * math.pi / 3.0)
    cal.add_argument("--shots", type=parse_positive_int, default=10000)
    cal.add_argument("--seed", type=int, default=0)
    cal.add_argument("--grid-points", type=parse_positive_int, default=181)
    cal.add_argument("--out", help="write the calibration curve as CSV")
    cal.add_argument("--format", choices=["text", "json"], default="text")

    val = sub.add_parser("validate", help="run the internal invariant suite")
    val.add_argument("--format", choices=["text", "json"], default="text")

    return parser


def _cmd_sweep(args) -> int:
    cfg = SweepConfig(
        n=args.n,
        theta=args.theta,
        kinds=args.channels,
        schemes=args.schemes,
        p_grid=args.p_grid,
        mode=Mode(args.mode),
        shots=args.shots,
        base_seed=args.seed,
        optimize_xi=not args.no_optimize_xi,
    )
    curves = run_sweep(cfg, workers=args.workers)
    out = resolve_out_path(args.out)
    serialize_curves(curves, args.format, out)
    total = sum(len(c.points) for c in curves)
    print(f"wrote {len(curves)} curves ({total} points) to {out}")
    return 0


def _cmd_run(args) -> int:
    if args.xi is not None:
        xi = args.xi
    elif args.scheme.uses_xi:
        xi = optimize_xi(args.scheme, args.channel, args.p, args.n, args.theta).xi_star
    else:
        xi = 0.0
    inst = resolve_scheme(args.scheme, args.channel, args.n, args.theta, xi)
    ch = make_channel(args.channel, args.p)
    psi = input_state(args.n, args.theta)
    rho = run_protected(inst, ch, psi)
    if Mode(args.mode) is Mode.EXACT:
        est = fidelity_exact(psi, rho)
    else:
        seed = point_seed(args.seed, args.scheme.value, args.channel.value, 0)
        est = fidelity_sampled(prep_circuit(args.n, args.theta), rho, args.shots, seed)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scheme": args.scheme.value,
                    "kind": args.channel.value,
                    "n": args.n,
                    "theta": args.theta,
                    "p": args.p,
                    "xi": xi,
                    "fidelity": est.value,
                    "stderr": est.stderr,
                    "mode": args.mode,
                }
            )
        )
    else:
        print(f"{est.value:.12f}")
    return 0


def _cmd_optimize(args) -> int:
    opt = optimize_xi(
        args.scheme, args.channel, args.p, args.n, args.theta, grid_points=args.grid_points
    )
    if args.format == "json":
        print(
            json.dumps(
                {
                    "xi_star": opt.xi_star,
                    "f_star": opt.f_star,
                    "mode": opt.mode.value,
                    "evaluations": opt.evaluations,
                }
            )
        )
    else:
        print(f"xi_star = {opt.xi_star:.9f}")
        print(f"f_star  = {opt.f_star:.12f}")
        print(f"evaluations = {opt.evaluations}")
    return 0


def _cmd_calibrate(args) -> int:
    result = calibrate_xi(
        args.scheme,
        args.channel,
        args.p,
        args.n,
        args.theta,
        shots=args.shots,
        seed=args.seed,
        grid_points=args.grid_points,
    )
    opt = result.optimum
    if args.format == "json":
        print(
            json.dumps(
                {
                    "xi_star": opt.xi_star,
                    "f_star": opt.f_star,
                    "mode": opt.mode.value,
                    "evaluations": opt.evaluations,
                    "curve": [
                        {"xi": s.xi, "fidelity": s.value, "stderr": s.stderr}
                        for s in result.samples
                    ],
                }
            )
        )
    else:
        print(f"xi_star = {opt.xi_star:.9f}")
        print(f"f_star  = {opt.f_star:.12f}")
        for s in result.samples:
            print(f"{s.xi:+.9f} {s.value:.6f} {s.stderr:.6f}")
    if args.out:
        out = resolve_out_path(args.out)
        try:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("xi,fidelity,stderr\n")
                for s in result.samples:
                    fh.write(f"{s.xi:.12g},{s.value:.12g},{s.stderr:.12g}\n")
        except OSError as exc:
            raise OSError(f"cannot write {out}: {exc}") from exc
    return 0


def _cmd_validate(args) -> int:
    results = run_all_checks()
    if args.format == "json":
        print(
            json.dumps(
                {
                    "passed": all(r.passed for r in results),
                    "checks": [
                        {"name": r.name, "passed": r.passed, "detail": r.detail}
                        for r in results
                    ],
                }
            )
        )
    else:
        for r in results:
            status = "pass" if r.passed else "FAIL"
            print(f"[{status}] {r.name}: {r.detail}")
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "run": _cmd_run,
        "optimize": _cmd_optimize,
        "calibrate": _cmd_calibrate,
        "validate": _cmd_validate,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        # bad flag combinations surface here (e.g. optimizing a scheme with
        # no collective angle); report them as usage errors
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
