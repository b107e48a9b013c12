"""Protection schemes: resolve the pre/post unitary pair and run the pipeline.

A scheme assigns the pre-processing unitary U and post-processing unitary V
around the decoherence channel E, producing V E[U rho U^dag] V^dag. With D
the transversal Hadamard, B(xi) the collective rotation, and P the
preparation unitary:

    unprotected   U = I            V = I
    ind-ind       U = D            V = D
    ind-coll      U = D            V = B(xi)
    coll-ind      U = B(xi)^dag    V = D
    coll-coll     U = P^dag        V = P

For amplitude damping the individual/mixed schemes substitute modified
operators so the dominant amplitude lands on the damping fixed point |0...0>:
pre-processing D gains a trailing transversal X (matrix X D), post-processing
B(xi) gains a leading one (matrix B(xi) X), and the adjoint-consistent
substitutions apply to pre-processing B(xi)^dag and post-processing D. The
coll-coll scheme is unchanged for every channel kind.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind, KrausChannel, apply_product_channel
from .circuits import collective_rotation, compile_circuit, hadamard_matrix, prep_matrix, x_all_matrix
from .linalg import DensityMatrix, StateVector, ValidationError, apply_unitary, _frozen


class Scheme(str, enum.Enum):
    UNPROTECTED = "unprotected"
    IND_IND = "ind-ind"
    IND_COLL = "ind-coll"
    COLL_IND = "coll-ind"
    COLL_COLL = "coll-coll"

    @property
    def uses_xi(self) -> bool:
        return self in (Scheme.IND_COLL, Scheme.COLL_IND)


@dataclass(frozen=True, eq=False)
class SchemeInstance:
    """Resolved (U, V) pair for one (scheme, channel kind, n, theta, xi)."""

    scheme: Scheme
    n: int
    theta: float
    xi: float
    channel_kind: ChannelKind
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        dim = 1 << self.n
        for name, op in (("u", self.u), ("v", self.v)):
            op = np.asarray(op, dtype=complex)
            if op.shape != (dim, dim):
                raise ValueError(f"{name} must be {dim}x{dim}, got {op.shape}")
            dev = float(np.max(np.abs(op @ op.conj().T - np.eye(dim))))
            if dev > 1e-12:
                raise ValidationError(f"{name} is not unitary: deviation {dev!r}")
            object.__setattr__(self, name, _frozen(op))
        if self.scheme is Scheme.UNPROTECTED:
            if np.max(np.abs(self.u - np.eye(dim))) > 0 or np.max(np.abs(self.v - np.eye(dim))) > 0:
                raise ValidationError("unprotected scheme requires identity u and v")


def resolve_scheme(
    scheme: Scheme,
    kind: ChannelKind,
    n: int,
    theta: float,
    xi: float = 0.0,
) -> SchemeInstance:
    """Build the (U, V) pair for a scheme against one channel kind."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    dim = 1 << n
    damping = kind is ChannelKind.AMPLITUDE_DAMPING
    if scheme is Scheme.UNPROTECTED:
        ident = np.eye(dim, dtype=complex)
        u, v = ident, ident
    elif scheme is Scheme.COLL_COLL:
        prep = prep_matrix(n, theta)
        u, v = prep.conj().T, prep
    else:
        had = hadamard_matrix(n)
        if scheme is Scheme.IND_IND:
            u, v = had, had
        elif scheme is Scheme.IND_COLL:
            u, v = had, compile_circuit(collective_rotation(n, xi))
        elif scheme is Scheme.COLL_IND:
            u, v = compile_circuit(collective_rotation(n, xi)).conj().T, had
        else:
            raise ValueError(f"unknown scheme: {scheme!r}")
        if damping:
            xall = x_all_matrix(n)
            u = xall @ u
            v = v @ xall
    return SchemeInstance(scheme, n, theta, xi, kind, u, v)


def run_protected(inst: SchemeInstance, ch: KrausChannel, psi_in: StateVector) -> DensityMatrix:
    """Execute V E[U |psi><psi| U^dag] V^dag for one channel instance."""
    if ch.kind is not inst.channel_kind:
        raise ValueError(
            f"channel kind {ch.kind.value} does not match scheme instance "
            f"kind {inst.channel_kind.value}"
        )
    if psi_in.n != inst.n:
        raise ValueError(f"state has n={psi_in.n}, scheme instance has n={inst.n}")
    rho = DensityMatrix.from_state(psi_in)
    rho = apply_unitary(rho, inst.u)
    rho = apply_product_channel(rho, ch)
    return apply_unitary(rho, inst.v)
