"""Simulated MUB measurements and linear-inversion state estimation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csco import CscoBasis
from .errors import DimMismatch, EmptyRecord, NegativeProbability
from .numerics import TOL, frozen
from .qpd import single_set_probabilities
from .state import BlochState, make_rng


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    """Outcome counts, one row per commuting set, one column per outcome."""

    dim: int
    shots: int
    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts)
        n = self.dim
        if c.shape != (n + 1, n):
            raise DimMismatch(f"counts must have shape ({n + 1}, {n}), got {c.shape}")
        if np.any(c < 0) or not np.all(np.equal(np.mod(c, 1), 0)):
            raise ValueError("counts must be non-negative integers")
        if np.any(c.sum(axis=1) != self.shots):
            raise ValueError("every row of counts must sum to shots")
        object.__setattr__(self, "counts", frozen(c.astype(np.int64)))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "shots": self.shots,
                "counts": [[int(x) for x in row] for row in self.counts]}

    @classmethod
    def from_dict(cls, d: dict) -> "MeasurementRecord":
        return cls(int(d["dim"]), int(d["shots"]), np.asarray(d["counts"]))


def outcome_probabilities(rho, basis: CscoBasis, tol: float = TOL.probability) -> np.ndarray:
    """Born probabilities for every commuting set, shape ``(n + 1, n)``.

    Raises :class:`NegativeProbability` if ``rho`` is not a valid state.
    """
    n = basis.dim
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (n, n):
        raise DimMismatch(f"density matrix must be {n}x{n}")
    probs = np.array([single_set_probabilities(rho, basis, i) for i in range(1, n + 2)])
    if probs.min() < -tol or np.max(np.abs(probs.sum(axis=1) - 1.0)) > tol:
        raise NegativeProbability(
            f"outcome probabilities invalid (min {probs.min():.3e}, "
            f"row sums {probs.sum(axis=1)})")
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum(axis=1, keepdims=True)


def simulate_counts(rho, basis: CscoBasis, shots: int, seed=0) -> MeasurementRecord:
    """Draw ``shots`` i.i.d. outcomes per commuting set."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    probs = outcome_probabilities(rho, basis)
    rng = make_rng(seed)
    counts = np.array([rng.multinomial(shots, p) for p in probs])
    return MeasurementRecord(basis.dim, shots, counts)


@dataclass
class BlochEstimate:
    state: BlochState
    stderr: np.ndarray

    @property
    def aggregate_stderr(self) -> float:
        """Root-sum-square of the component standard errors."""
        return float(np.sqrt(np.sum(self.stderr**2)))


def estimate_bloch(record: MeasurementRecord, basis: CscoBasis) -> BlochEstimate:
    """Empirical mean of the outcome tuples per commuting set.

    Standard errors use the plug-in multinomial variance
    ``(E[z_k^2] - E[z_k]^2) / shots``.  No projection onto physical states is
    made.
    """
    if record.dim != basis.dim:
        raise DimMismatch("record and basis dimensions differ")
    if record.shots < 1:
        raise EmptyRecord("record holds no shots")
    z = basis.alphabet
    freq = record.counts / record.shots
    mean = freq @ z
    second = freq @ z**2
    var = np.clip(second - mean**2, 0.0, None) / record.shots
    return BlochEstimate(BlochState(basis.dim, mean.ravel()), np.sqrt(var).ravel())
