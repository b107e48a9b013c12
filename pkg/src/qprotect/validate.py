"""Runtime self-validation: the invariant suite behind `qprotect validate`.

Each check re-derives an expected result through an independent construction
(bit-twiddling basis action, explicit full-register Kraus sums, closed-form
states) and compares it against the library path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind, apply_channel_to_qubit, apply_product_channel, choi_matrix, make_channel
from .circuits import CircuitDef, collective_rotation, compile_circuit, input_state, transversal_hadamard
from .estimation import fidelity_exact
from .linalg import DensityMatrix, GateKind, GateSpec, min_eigenvalue
from .schemes import Scheme, resolve_scheme, run_protected

_SQ2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


# -- independent reference constructions ------------------------------------


def _bit(i: int, q: int, n: int) -> int:
    return (i >> (n - 1 - q)) & 1


def _flip(i: int, q: int, n: int) -> int:
    return i ^ (1 << (n - 1 - q))


def _apply_gate_vec(vec: np.ndarray, n: int, g: GateSpec) -> np.ndarray:
    out = np.zeros_like(vec)
    if g.kind is GateKind.H:
        (q,) = g.targets
        for i, a in enumerate(vec):
            if a == 0:
                continue
            if _bit(i, q, n) == 0:
                out[i] += _SQ2 * a
                out[_flip(i, q, n)] += _SQ2 * a
            else:
                out[_flip(i, q, n)] += _SQ2 * a
                out[i] -= _SQ2 * a
    elif g.kind is GateKind.X:
        (q,) = g.targets
        for i, a in enumerate(vec):
            out[_flip(i, q, n)] += a
    elif g.kind is GateKind.RY:
        (q,) = g.targets
        c, s = math.cos(g.angle / 2.0), math.sin(g.angle / 2.0)
        for i, a in enumerate(vec):
            if a == 0:
                continue
            if _bit(i, q, n) == 0:
                out[i] += c * a
                out[_flip(i, q, n)] += s * a
            else:
                out[_flip(i, q, n)] -= s * a
                out[i] += c * a
    else:
        ctrl, tgt = g.targets
        for i, a in enumerate(vec):
            out[_flip(i, tgt, n) if _bit(i, ctrl, n) else i] += a
    return out


def _oracle_matrix(n: int, gates) -> np.ndarray:
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        v = np.zeros(dim, dtype=complex)
        v[col] = 1.0
        for g in gates:
            v = _apply_gate_vec(v, n, g)
        m[:, col] = v
    return m


def _oracle_state(n: int, theta: float) -> np.ndarray:
    plus = np.array([_SQ2, _SQ2], dtype=complex)
    minus = np.array([_SQ2, -_SQ2], dtype=complex)
    vp = vm = np.array([1.0 + 0j])
    for _ in range(n):
        vp, vm = np.kron(vp, plus), np.kron(vm, minus)
    return math.cos(theta / 2.0) * vp + math.sin(theta / 2.0) * vm


def _oracle_full_channel(rho: np.ndarray, n: int, kraus) -> np.ndarray:
    out = np.zeros_like(rho)
    for combo in itertools.product(kraus, repeat=n):
        k = np.array([[1.0 + 0j]])
        for a in combo:
            k = np.kron(k, a)
        out += k @ rho @ k.conj().T
    return out


def _random_density(rng: np.random.Generator, n: int) -> DensityMatrix:
    dim = 1 << n
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(n, m / np.trace(m))


def _random_circuit(rng: np.random.Generator, n: int, depth: int) -> list[GateSpec]:
    gates = []
    for _ in range(depth):
        kind = rng.choice(["h", "x", "ry", "cnot"])
        if kind == "cnot" and n >= 2:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(GateSpec.cnot(int(c), int(t)))
        elif kind == "ry":
            gates.append(GateSpec.ry(float(rng.uniform(-math.pi, math.pi)), int(rng.integers(n))))
        elif kind == "x":
            gates.append(GateSpec.x(int(rng.integers(n))))
        else:
            gates.append(GateSpec.h(int(rng.integers(n))))
    return gates


# -- checks ------------------------------------------------------------------


def check_kraus_completeness() -> CheckResult:
    worst = 0.0
    for kind in ChannelKind:
        for k in range(101):
            ch = make_channel(kind, k / 100.0)
            total = sum(a.conj().T @ a for a in ch.kraus)
            worst = max(worst, float(np.max(np.abs(total - np.eye(2)))))
    return CheckResult(
        "kraus-completeness", worst <= 1e-12, f"max |sum A^dag A - I| = {worst:.3e}"
    )


def check_choi_positivity() -> CheckResult:
    low = 0.0
    for kind in ChannelKind:
        for k in range(101):
            low = min(low, min_eigenvalue(choi_matrix(make_channel(kind, k / 100.0))))
    return CheckResult("choi-positivity", low >= -1e-10, f"min Choi eigenvalue = {low:.3e}")


def check_channel_factorization(seed: int = 11) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(30):
        n = int(rng.integers(1, 4))
        kind = ChannelKind(rng.choice([k.value for k in ChannelKind]))
        ch = make_channel(kind, float(rng.uniform(0.0, 1.0)))
        rho = _random_density(rng, n)
        expect = _oracle_full_channel(rho.matrix, n, ch.kraus)
        got = apply_product_channel(rho, ch).matrix
        worst = max(worst, float(np.max(np.abs(got - expect))))
    return CheckResult(
        "channel-factorization", worst <= 1e-10, f"max sequential-vs-full deviation = {worst:.3e}"
    )


def check_channel_order_independence(seed: int = 12) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    n = 3
    for _ in range(10):
        kind = ChannelKind(rng.choice([k.value for k in ChannelKind]))
        ch = make_channel(kind, float(rng.uniform(0.0, 1.0)))
        rho = _random_density(rng, n)
        ref = apply_product_channel(rho, ch).matrix
        for order in itertools.permutations(range(n)):
            out = rho
            for q in order:
                out = apply_channel_to_qubit(out, ch, q)
            worst = max(worst, float(np.max(np.abs(out.matrix - ref))))
    return CheckResult(
        "channel-order-independence", worst <= 1e-10, f"max permutation deviation = {worst:.3e}"
    )


def check_gate_embedding(seed: int = 13) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(25):
        n = int(rng.integers(1, 5))
        gates = _random_circuit(rng, n, int(rng.integers(1, 9)))
        got = compile_circuit(CircuitDef(n, tuple(gates)))
        expect = _oracle_matrix(n, gates)
        worst = max(worst, float(np.max(np.abs(got - expect))))
    return CheckResult(
        "gate-embedding", worst <= 1e-10, f"max compiled-vs-oracle deviation = {worst:.3e}"
    )


def check_prep_state() -> CheckResult:
    worst = 0.0
    for n in range(1, 7):
        for theta in (0.0, math.pi / 4.0, 2.0 * math.pi / 3.0, math.pi):
            got = input_state(n, theta).amplitudes
            worst = max(worst, float(np.max(np.abs(got - _oracle_state(n, theta)))))
    return CheckResult(
        "prep-state", worst <= 1e-12, f"max closed-form deviation = {worst:.3e}"
    )


def check_collective_rotation_zero() -> CheckResult:
    worst = 0.0
    for n in range(1, 6):
        b0 = compile_circuit(collective_rotation(n, 0.0))
        d = compile_circuit(transversal_hadamard(n))
        worst = max(worst, float(np.max(np.abs(b0 - d))))
    return CheckResult(
        "collective-rotation-zero", worst <= 1e-12, f"max |B(0) - D| = {worst:.3e}"
    )


def check_zero_strength_identity() -> CheckResult:
    theta = 2.0 * math.pi / 3.0
    worst = 1.0
    for n in (2, 4):
        psi = input_state(n, theta)
        for scheme in Scheme:
            for kind in ChannelKind:
                inst = resolve_scheme(scheme, kind, n, theta, 0.0)
                f = fidelity_exact(psi, run_protected(inst, make_channel(kind, 0.0), psi)).value
                worst = min(worst, f)
    return CheckResult(
        "zero-strength-identity", worst >= 1.0 - 1e-12, f"min fidelity at p=0 is {worst:.15f}"
    )


def check_collective_collective_fixed_points() -> CheckResult:
    theta = 2.0 * math.pi / 3.0
    worst = 0.0
    for n in (2, 4):
        psi = input_state(n, theta)
        for p in (0.0, 0.25, 0.5, 0.75, 1.0):
            for kind in (ChannelKind.DEPHASING, ChannelKind.AMPLITUDE_DAMPING):
                inst = resolve_scheme(Scheme.COLL_COLL, kind, n, theta)
                f = fidelity_exact(psi, run_protected(inst, make_channel(kind, p), psi)).value
                worst = max(worst, abs(f - 1.0))
            inst = resolve_scheme(Scheme.COLL_COLL, ChannelKind.DEPOLARIZING, n, theta)
            f = fidelity_exact(
                psi, run_protected(inst, make_channel(ChannelKind.DEPOLARIZING, p), psi)
            ).value
            worst = max(worst, abs(f - (1.0 - p / 2.0) ** n))
    return CheckResult(
        "collective-collective-fixed-points",
        worst <= 1e-12,
        f"max deviation from closed form = {worst:.3e}",
    )


ALL_CHECKS = (
    check_kraus_completeness,
    check_choi_positivity,
    check_channel_factorization,
    check_channel_order_independence,
    check_gate_embedding,
    check_prep_state,
    check_collective_rotation_zero,
    check_zero_strength_identity,
    check_collective_collective_fixed_points,
)


def run_all_checks() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
