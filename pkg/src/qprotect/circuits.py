"""Structured circuits: state preparation, transversal gates, and the
collective rotation used by the mixed protection schemes.

The protected state family is

    cos(theta/2) |+...+>  +  sin(theta/2) |-...->

prepared from |0...0> by an Ry(theta) on qubit 0, a CNOT fan-out, and a
Hadamard on every qubit. The collective rotation generalizes the transversal
Hadamard: it un-fans the register, rotates qubit 0 by xi, re-fans, and
applies transversal Hadamards, so it rotates by xi inside the
{|0...0>, |1...1>} subspace and reduces to plain Hadamards at xi = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import GateSpec, StateVector, ValidationError, embed_gate


@dataclass(frozen=True)
class CircuitDef:
    """An ordered gate sequence on n qubits, applied left to right in time."""

    n: int
    gates: tuple[GateSpec, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(t >= self.n for t in g.targets):
                raise ValueError(f"gate targets {g.targets} out of range for n={self.n}")


def compile_circuit(c: CircuitDef) -> np.ndarray:
    """Dense unitary of the circuit; later gates multiply on the left."""
    m = np.eye(1 << c.n, dtype=complex)
    for g in c.gates:
        m = embed_gate(g, c.n) @ m
    dev = float(np.max(np.abs(m @ m.conj().T - np.eye(1 << c.n))))
    if dev > 1e-12:
        raise ValidationError(f"compiled circuit is not unitary: deviation {dev!r}")
    return m


def prep_circuit(n: int, theta: float) -> CircuitDef:
    """Preparation circuit: Ry(theta) on qubit 0, CNOT fan-out, Hadamards.

    Acting on |0...0> it produces
    cos(theta/2)|+...+> + sin(theta/2)|-...->.
    """
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    gates = [GateSpec.ry(theta, 0)]
    gates += [GateSpec.cnot(0, k) for k in range(1, n)]
    gates += [GateSpec.h(q) for q in range(n)]
    return CircuitDef(n, tuple(gates))


def transversal_hadamard(n: int) -> CircuitDef:
    """Hadamard on every qubit; self-inverse."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    return CircuitDef(n, tuple(GateSpec.h(q) for q in range(n)))


def collective_rotation(n: int, xi: float) -> CircuitDef:
    """CNOT ladder, Ry(xi) on qubit 0, inverse ladder, then Hadamards.

    Sends cos(a/2)|0...0> + sin(a/2)|1...1> to
    cos((a+xi)/2)|+...+> + sin((a+xi)/2)|-...->, and equals the transversal
    Hadamard at xi = 0.
    """
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    ladder = [GateSpec.cnot(0, k) for k in range(1, n)]
    gates = ladder + [GateSpec.ry(xi, 0)] + ladder[::-1]
    gates += [GateSpec.h(q) for q in range(n)]
    return CircuitDef(n, tuple(gates))


def transversal_x(n: int) -> CircuitDef:
    """Pauli X on every qubit."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    return CircuitDef(n, tuple(GateSpec.x(q) for q in range(n)))


def input_state(n: int, theta: float) -> StateVector:
    """The protected input state, built by compiling the preparation circuit."""
    u = prep_matrix(n, theta)
    return StateVector(n, u[:, 0].copy())


# Compiled matrices for the xi-independent circuits are cached: scheme
# resolution sits inside optimization loops and rebuilds them constantly.


@lru_cache(maxsize=64)
def hadamard_matrix(n: int) -> np.ndarray:
    m = compile_circuit(transversal_hadamard(n))
    m.setflags(write=False)
    return m


@lru_cache(maxsize=64)
def x_all_matrix(n: int) -> np.ndarray:
    m = compile_circuit(transversal_x(n))
    m.setflags(write=False)
    return m


@lru_cache(maxsize=256)
def prep_matrix(n: int, theta: float) -> np.ndarray:
    m = compile_circuit(prep_circuit(n, theta))
    m.setflags(write=False)
    return m
