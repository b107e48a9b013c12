"""Single-qubit decoherence channels and their n-fold product action.

Three noise models are supported, each parameterized by a strength p in
[0, 1] and realized as a set of 2x2 Kraus operators:

* amplitude damping   {[[1, 0], [0, sqrt(1-p)]], [[0, sqrt(p)], [0, 0]]}
* dephasing           rho -> (1-p) rho + p (rho_00 |0><0| + rho_11 |1><1|)
* depolarizing        rho -> (1-p) rho + p I/2

The register-level channel is the tensor product of the same single-qubit
map on every qubit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import (
    DensityMatrix,
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PROJ_0,
    PROJ_1,
    ValidationError,
    _frozen,
    _kron_chain,
)

ATOL_COMPLETENESS = 1e-12


class ChannelKind(str, enum.Enum):
    AMPLITUDE_DAMPING = "amplitude-damping"
    DEPHASING = "dephasing"
    DEPOLARIZING = "depolarizing"


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A single-qubit CPTP map at strength p, given by 2x2 Kraus operators."""

    kind: ChannelKind
    p: float
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"strength must lie in [0, 1], got p={self.p}")
        ops = tuple(_frozen(a) for a in self.kraus)
        if any(a.shape != (2, 2) for a in ops):
            raise ValueError("Kraus operators must be 2x2")
        total = sum(a.conj().T @ a for a in ops)
        dev = float(np.max(np.abs(total - IDENTITY_2)))
        if dev > ATOL_COMPLETENESS:
            raise ValidationError(
                f"Kraus completeness violated: max |sum A^dag A - I| = {dev!r}"
            )
        object.__setattr__(self, "kraus", ops)


def make_channel(kind: ChannelKind, p: float) -> KrausChannel:
    """Build the Kraus set for one noise model at strength p.

    Raises ValueError for p outside [0, 1].
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"strength must lie in [0, 1], got p={p}")
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        ops = (
            np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex),
            np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=complex),
        )
    elif kind is ChannelKind.DEPHASING:
        ops = (
            math.sqrt(1.0 - p) * IDENTITY_2,
            math.sqrt(p) * PROJ_0,
            math.sqrt(p) * PROJ_1,
        )
    elif kind is ChannelKind.DEPOLARIZING:
        ops = (
            math.sqrt(1.0 - 3.0 * p / 4.0) * IDENTITY_2,
            math.sqrt(p / 4.0) * PAULI_X,
            math.sqrt(p / 4.0) * PAULI_Y,
            math.sqrt(p / 4.0) * PAULI_Z,
        )
    else:
        raise ValueError(f"unknown channel kind: {kind!r}")
    return KrausChannel(kind, p, ops)


def apply_channel_to_qubit(rho: DensityMatrix, ch: KrausChannel, qubit: int) -> DensityMatrix:
    """Apply the single-qubit channel to one qubit of the register."""
    if not 0 <= qubit < rho.n:
        raise ValueError(f"qubit {qubit} out of range for n={rho.n}")
    out = _apply_to_qubit(rho.matrix, ch, qubit, rho.n)
    return DensityMatrix(rho.n, out)


@lru_cache(maxsize=2048)
def _embedded_kraus(ch: KrausChannel, qubit: int, n: int) -> tuple[np.ndarray, ...]:
    # KrausChannel hashes by identity; the channel object is immutable, so a
    # cached embedding can never go stale.
    left = np.eye(1 << qubit, dtype=complex)
    right = np.eye(1 << (n - 1 - qubit), dtype=complex)
    ops = tuple(_frozen(_kron_chain([left, a, right])) for a in ch.kraus)
    return ops


def _apply_to_qubit(m: np.ndarray, ch: KrausChannel, qubit: int, n: int) -> np.ndarray:
    out = np.zeros_like(m)
    for op in _embedded_kraus(ch, qubit, n):
        out += op @ m @ op.conj().T
    return out


def apply_product_channel(rho: DensityMatrix, ch: KrausChannel) -> DensityMatrix:
    """Apply the channel to every qubit of the register (qubit 0 through n-1).

    Identical single-qubit maps on distinct qubits commute, so the order is
    immaterial; the result equals the 2^n-dimensional channel whose Kraus set
    is every tensor product of single-qubit Kraus operators.
    """
    m = rho.matrix
    for q in range(rho.n):
        m = _apply_to_qubit(m, ch, q, rho.n)
    return DensityMatrix(rho.n, m)


def choi_matrix(ch: KrausChannel) -> np.ndarray:
    """4x4 Choi operator sum_ij |i><j| (x) E(|i><j|).

    Positive semidefinite exactly when the map is completely positive.
    """
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[i, j] = 1.0
            image = sum(a @ unit @ a.conj().T for a in ch.kraus)
            choi += np.kron(unit, image)
    return choi
