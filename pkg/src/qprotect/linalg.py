"""Dense complex linear algebra for small qubit registers.

Everything operates on plain ``numpy`` arrays of ``complex128``. Registers are
indexed so that qubit 0 is the *most significant* bit of the computational
basis index, i.e. the leftmost tensor factor (the top wire of a circuit
diagram). Dimensions stay at or below 2^10, so dense matrices are used
throughout.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

ATOL_STATE_NORM = 1e-12
ATOL_HERMITIAN = 1e-12
ATOL_TRACE = 1e-12
ATOL_UNITARY = 1e-10
EIGENVALUE_FLOOR = -1e-10


class ValidationError(ValueError):
    """A physics invariant (unitarity, Hermiticity, positivity, ...) is violated."""


_SQ2 = 1.0 / math.sqrt(2.0)

IDENTITY_2 = np.eye(2, dtype=complex)
HADAMARD = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PROJ_0 = np.array([[1, 0], [0, 0]], dtype=complex)
PROJ_1 = np.array([[0, 0], [0, 1]], dtype=complex)


def ry_matrix(angle: float) -> np.ndarray:
    """Rotation about the Bloch y-axis: Ry(a)|0> = cos(a/2)|0> + sin(a/2)|1>."""
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


class GateKind(enum.Enum):
    H = "h"
    X = "x"
    RY = "ry"
    CNOT = "cnot"


_GATE_ARITY = {GateKind.H: 1, GateKind.X: 1, GateKind.RY: 1, GateKind.CNOT: 2}


@dataclass(frozen=True)
class GateSpec:
    """One elementary gate bound to qubit indices (control first for CNOT)."""

    kind: GateKind
    targets: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) != _GATE_ARITY[self.kind]:
            raise ValueError(
                f"{self.kind.value} takes {_GATE_ARITY[self.kind]} target(s), "
                f"got {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate targets in {self.targets}")
        if any(t < 0 for t in self.targets):
            raise ValueError(f"negative qubit index in {self.targets}")
        if self.kind is GateKind.RY:
            if self.angle is None:
                raise ValueError("ry gate requires an angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind.value} gate takes no angle")

    @classmethod
    def h(cls, qubit: int) -> "GateSpec":
        return cls(GateKind.H, (qubit,))

    @classmethod
    def x(cls, qubit: int) -> "GateSpec":
        return cls(GateKind.X, (qubit,))

    @classmethod
    def ry(cls, angle: float, qubit: int) -> "GateSpec":
        return cls(GateKind.RY, (qubit,), angle)

    @classmethod
    def cnot(cls, control: int, target: int) -> "GateSpec":
        return cls(GateKind.CNOT, (control, target))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of an n-qubit register; amplitudes normalized to 1."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 1 << self.n:
            raise ValueError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got {amps.shape[0]}"
            )
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > ATOL_STATE_NORM:
            raise ValidationError(f"state not normalized: sum |a|^2 = {norm!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def basis(cls, n: int, index: int = 0) -> "StateVector":
        amps = np.zeros(1 << n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    @property
    def dim(self) -> int:
        return 1 << self.n


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator on n qubits."""

    n: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        m = np.asarray(self.matrix, dtype=complex)
        dim = 1 << self.n
        if m.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix for n={self.n}, got {m.shape}")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > ATOL_HERMITIAN:
            raise ValidationError(f"matrix not Hermitian: max |m - m^dag| = {herm!r}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > ATOL_TRACE:
            raise ValidationError(f"trace must be 1, got {tr!r}")
        low = float(np.linalg.eigvalsh(m)[0])
        if low < EIGENVALUE_FLOOR:
            raise ValidationError(f"matrix not positive semidefinite: min eigenvalue {low!r}")
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityMatrix":
        return cls(psi.n, np.outer(psi.amplitudes, psi.amplitudes.conj()))

    @property
    def dim(self) -> int:
        return 1 << self.n


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, (a (x) b)[i*db+k, j*db+l] = a[i,j] b[k,l]."""
    return _kron2(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _kron2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.kron carries heavy per-call overhead for these tiny matrices
    ra, ca = a.shape
    rb, cb = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def _kron_chain(factors: list[np.ndarray]) -> np.ndarray:
    return reduce(_kron2, factors)


def _embed_factors(placed: dict[int, np.ndarray], n: int) -> np.ndarray:
    # collapse runs of untouched qubits into single identity blocks
    factors: list[np.ndarray] = []
    run = 0
    for q in range(n):
        if q in placed:
            if run:
                factors.append(np.eye(1 << run, dtype=complex))
                run = 0
            factors.append(placed[q])
        else:
            run += 1
    if run:
        factors.append(np.eye(1 << run, dtype=complex))
    return _kron_chain(factors)


@lru_cache(maxsize=4096)
def embed_gate(g: GateSpec, n: int) -> np.ndarray:
    """Lift a gate to the full 2^n-dimensional register unitary.

    Qubit 0 is the leftmost tensor factor. Identity acts on every qubit the
    gate does not touch. The returned array is read-only (results are cached).
    """
    if any(t >= n for t in g.targets):
        raise ValueError(f"gate targets {g.targets} out of range for n={n}")
    if g.kind is GateKind.CNOT:
        control, target = g.targets
        out = _embed_factors({control: PROJ_0}, n) + _embed_factors(
            {control: PROJ_1, target: PAULI_X}, n
        )
    else:
        if g.kind is GateKind.H:
            mat = HADAMARD
        elif g.kind is GateKind.X:
            mat = PAULI_X
        else:
            mat = ry_matrix(g.angle)  # type: ignore[arg-type]
        out = _embed_factors({g.targets[0]: mat}, n)
    out.setflags(write=False)
    return out


def _check_unitary(u: np.ndarray, dim: int, atol: float) -> None:
    if u.shape != (dim, dim):
        raise ValueError(f"expected {dim}x{dim} operator, got {u.shape}")
    dev = float(np.max(np.abs(u @ u.conj().T - np.eye(dim))))
    if dev > atol:
        raise ValidationError(f"operator not unitary: max |u u^dag - I| = {dev!r}")


def apply_unitary(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    """Conjugate the state by a unitary: rho -> u rho u^dag."""
    u = np.asarray(u, dtype=complex)
    _check_unitary(u, rho.dim, ATOL_UNITARY)
    return DensityMatrix(rho.n, u @ rho.matrix @ u.conj().T)


def pure_fidelity(psi: StateVector, rho: DensityMatrix) -> float:
    """Overlap <psi| rho |psi>, clamped to [0, 1]."""
    if psi.n != rho.n:
        raise ValueError(f"dimension mismatch: state n={psi.n}, operator n={rho.n}")
    val = complex(psi.amplitudes.conj() @ rho.matrix @ psi.amplitudes)
    if abs(val.imag) > 1e-12:
        raise ValidationError(f"fidelity has non-negligible imaginary part: {val!r}")
    return min(1.0, max(0.0, val.real))


def min_eigenvalue(m: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > 1e-10:
        raise ValidationError(f"matrix not Hermitian: max |m - m^dag| = {dev!r}")
    return float(np.linalg.eigvalsh(m)[0])
