"""Exact and shot-sampled input-output fidelity.

The sampled estimator mirrors a hardware measurement: undo the preparation
circuit on the pipeline output, measure every qubit in the computational
basis, and report the fraction of all-zeros outcomes. Sampling is driven by
a seeded PCG64 generator, so identical inputs and seed always reproduce the
same estimate regardless of evaluation order.
"""

from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .circuits import CircuitDef, compile_circuit
from .linalg import DensityMatrix, StateVector, ValidationError, pure_fidelity

_MASK64 = (1 << 64) - 1

# diagonals inherit the density-matrix eigenvalue floor
_NEGATIVE_CLAMP = -1e-10
_MASS_TOLERANCE = 1e-6


class Mode(str, enum.Enum):
    EXACT = "exact"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class FidelityEstimate:
    """A fidelity value with its sampling uncertainty.

    Exact estimates carry stderr = 0, shots = 0, and no seed. Sampled
    estimates satisfy stderr = sqrt(value (1 - value) / shots).
    """

    value: float
    stderr: float = 0.0
    shots: int = 0
    seed: int | None = None


def fidelity_exact(psi_in: StateVector, rho_out: DensityMatrix) -> FidelityEstimate:
    """<psi_in| rho_out |psi_in> with zero uncertainty."""
    return FidelityEstimate(value=pure_fidelity(psi_in, rho_out))


def sample_outcomes(probabilities: np.ndarray, shots: int, seed: int) -> np.ndarray:
    """Draw multinomial outcome counts from a Born distribution.

    Args:
        probabilities: outcome probabilities; must sum to 1 within 1e-6.
            Negative entries above -1e-10 (rounding artifacts) are clamped
            to zero before renormalization.
        shots: number of draws, at least 1.
        seed: generator seed; identical inputs and seed give identical counts.

    Returns:
        Integer counts per outcome, summing to shots.
    """
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    probs = np.asarray(probabilities, dtype=float).reshape(-1)
    low = float(probs.min())
    if low < _NEGATIVE_CLAMP:
        raise ValidationError(f"probability {low!r} below the rounding clamp")
    probs = np.clip(probs, 0.0, None)
    mass = float(probs.sum())
    if abs(mass - 1.0) > _MASS_TOLERANCE:
        raise ValidationError(f"probability mass {mass!r} deviates from 1 by more than 1e-6")
    probs = probs / mass
    rng = np.random.default_rng(seed & _MASK64)
    return rng.multinomial(shots, probs)


def fidelity_sampled(
    psi_prep: CircuitDef,
    rho_out: DensityMatrix,
    shots: int,
    seed: int,
) -> FidelityEstimate:
    """Estimate fidelity as the all-zeros fraction after inverse preparation.

    Conjugates rho_out by the inverse of the preparation circuit, samples
    `shots` computational-basis outcomes from the resulting diagonal, and
    reports the fraction landing on |0...0>.
    """
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    if psi_prep.n != rho_out.n:
        raise ValueError(f"circuit has n={psi_prep.n}, state has n={rho_out.n}")
    u = compile_circuit(psi_prep)
    sigma = u.conj().T @ rho_out.matrix @ u
    probs = np.real(np.diag(sigma))
    counts = sample_outcomes(probs, shots, seed)
    value = counts[0] / shots
    stderr = math.sqrt(value * (1.0 - value) / shots)
    return FidelityEstimate(value=value, stderr=stderr, shots=shots, seed=seed)


def hash64(*parts: object) -> int:
    """Stable 64-bit hash of a label tuple (BLAKE2b, platform-independent)."""
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def point_seed(base_seed: int, scheme_id: str, kind_id: str, p_index: int) -> int:
    """Per-point seed for sweeps: base_seed XOR hash64(scheme, kind, p-index).

    Keeps sampled sweeps reproducible under any parallel scheduling.
    """
    return (base_seed ^ hash64(scheme_id, kind_id, p_index)) & _MASK64
