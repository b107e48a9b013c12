"""Sweep runner: fidelity-vs-strength curves across schemes and channel kinds.

Every (scheme, kind, p) point is an independent task: the collective angle is
re-optimized per strength when applicable, the pipeline runs, and the
fidelity is estimated exactly or by sampling with a per-point derived seed.
Points may be evaluated concurrently; results are always assembled in grid
order, so serialized output is byte-identical for identical configurations.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .channels import ChannelKind, make_channel
from .circuits import input_state, prep_circuit
from .estimation import Mode, fidelity_exact, fidelity_sampled, point_seed
from .optimize import optimize_xi
from .schemes import Scheme, resolve_scheme, run_protected

TOOL_VERSION = "0.1.0"
DEFAULT_THETA = 2.0 * math.pi / 3.0
DEFAULT_P_GRID = tuple(round(0.05 * k, 10) for k in range(21))

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepConfig:
    n: int = 2
    theta: float = DEFAULT_THETA
    kinds: tuple[ChannelKind, ...] = tuple(ChannelKind)
    schemes: tuple[Scheme, ...] = tuple(Scheme)
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    mode: Mode = Mode.EXACT
    shots: int = 10000
    base_seed: int = 0
    optimize_xi: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        if self.shots < 1:
            raise ValueError(f"shots must be at least 1, got {self.shots}")
        grid = tuple(float(p) for p in self.p_grid)
        if not grid:
            raise ValueError("p_grid must not be empty")
        if any(not 0.0 <= p <= 1.0 for p in grid):
            raise ValueError("p_grid values must lie in [0, 1]")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("p_grid must be strictly increasing")
        object.__setattr__(self, "p_grid", grid)
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "schemes", tuple(self.schemes))


@dataclass(frozen=True)
class SweepPoint:
    p: float
    fidelity: float
    stderr: float
    xi: float


@dataclass(frozen=True)
class FidelityCurve:
    scheme: Scheme
    kind: ChannelKind
    n: int
    theta: float
    points: tuple[SweepPoint, ...]
    mode: Mode = Mode.EXACT
    shots: int = 0
    base_seed: int = 0
    version: str = TOOL_VERSION

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))


def _evaluate_point(
    cfg: SweepConfig, scheme: Scheme, kind: ChannelKind, p_index: int, p: float
) -> SweepPoint:
    if scheme.uses_xi and cfg.optimize_xi:
        xi = optimize_xi(scheme, kind, p, cfg.n, cfg.theta).xi_star
    else:
        xi = 0.0
    inst = resolve_scheme(scheme, kind, cfg.n, cfg.theta, xi)
    ch = make_channel(kind, p)
    psi = input_state(cfg.n, cfg.theta)
    rho = run_protected(inst, ch, psi)
    if cfg.mode is Mode.EXACT:
        est = fidelity_exact(psi, rho)
    else:
        seed = point_seed(cfg.base_seed, scheme.value, kind.value, p_index)
        est = fidelity_sampled(prep_circuit(cfg.n, cfg.theta), rho, cfg.shots, seed)
    return SweepPoint(p=p, fidelity=est.value, stderr=est.stderr, xi=xi)


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[FidelityCurve]:
    """Evaluate every (scheme, kind, p) point and assemble curves.

    Per-point failures are logged and the point omitted; the rest of the
    sweep still completes. `workers` > 1 evaluates points in a thread pool;
    output is identical for any width.
    """
    tasks = [
        (scheme, kind, i, p)
        for scheme in cfg.schemes
        for kind in cfg.kinds
        for i, p in enumerate(cfg.p_grid)
    ]

    def run_one(task):
        scheme, kind, i, p = task
        try:
            return _evaluate_point(cfg, scheme, kind, i, p)
        except Exception:
            log.exception(
                "sweep point failed: scheme=%s kind=%s p=%s", scheme.value, kind.value, p
            )
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_one, tasks))
    else:
        results = [run_one(t) for t in tasks]

    by_task = dict(zip(tasks, results))
    curves = []
    for scheme in cfg.schemes:
        for kind in cfg.kinds:
            points = tuple(
                pt
                for i, p in enumerate(cfg.p_grid)
                if (pt := by_task[(scheme, kind, i, p)]) is not None
            )
            curves.append(
                FidelityCurve(
                    scheme=scheme,
                    kind=kind,
                    n=cfg.n,
                    theta=cfg.theta,
                    points=points,
                    mode=cfg.mode,
                    shots=cfg.shots,
                    base_seed=cfg.base_seed,
                )
            )
    return curves


CSV_HEADER = "scheme,kind,n,theta,p,fidelity,stderr,xi"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def curves_to_csv(curves: list[FidelityCurve]) -> str:
    lines = [CSV_HEADER]
    for c in curves:
        for pt in c.points:
            lines.append(
                f"{c.scheme.value},{c.kind.value},{c.n},{_fmt(c.theta)},"
                f"{_fmt(pt.p)},{_fmt(pt.fidelity)},{_fmt(pt.stderr)},{_fmt(pt.xi)}"
            )
    return "\n".join(lines) + "\n"


def curves_to_json(curves: list[FidelityCurve]) -> str:
    payload = {
        "curves": [
            {
                "scheme": c.scheme.value,
                "kind": c.kind.value,
                "n": c.n,
                "theta": float(_fmt(c.theta)),
                "points": [
                    {
                        "p": float(_fmt(pt.p)),
                        "fidelity": float(_fmt(pt.fidelity)),
                        "stderr": float(_fmt(pt.stderr)),
                        "xi": float(_fmt(pt.xi)),
                    }
                    for pt in c.points
                ],
                "metadata": {
                    "mode": c.mode.value,
                    "shots": c.shots,
                    "base_seed": c.base_seed,
                    "version": c.version,
                },
            }
            for c in curves
        ]
    }
    return json.dumps(payload, indent=2) + "\n"


def serialize_curves(curves: list[FidelityCurve], fmt: str, path) -> None:
    """Write curves to `path` as CSV or JSON."""
    fmt = fmt.lower()
    if fmt == "csv":
        text = curves_to_csv(curves)
    elif fmt == "json":
        text = curves_to_json(curves)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'json'")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_csv_rows(path) -> list[dict]:
    """Parse a curves CSV back into typed row dicts."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path} does not start with the expected header")
    rows = []
    for ln in lines[1:]:
        scheme, kind, n, theta, p, fidelity, stderr, xi = ln.split(",")
        rows.append(
            {
                "scheme": Scheme(scheme),
                "kind": ChannelKind(kind),
                "n": int(n),
                "theta": float(theta),
                "p": float(p),
                "fidelity": float(fidelity),
                "stderr": float(stderr),
                "xi": float(xi),
            }
        )
    return rows


def read_json_curves(path) -> list[FidelityCurve]:
    """Parse a curves JSON file back into FidelityCurve values."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    curves = []
    for c in payload["curves"]:
        meta = c["metadata"]
        curves.append(
            FidelityCurve(
                scheme=Scheme(c["scheme"]),
                kind=ChannelKind(c["kind"]),
                n=int(c["n"]),
                theta=float(c["theta"]),
                points=tuple(
                    SweepPoint(
                        p=float(pt["p"]),
                        fidelity=float(pt["fidelity"]),
                        stderr=float(pt["stderr"]),
                        xi=float(pt["xi"]),
                    )
                    for pt in c["points"]
                ),
                mode=Mode(meta["mode"]),
                shots=int(meta["shots"]),
                base_seed=int(meta["base_seed"]),
                version=str(meta["version"]),
            )
        )
    return curves
