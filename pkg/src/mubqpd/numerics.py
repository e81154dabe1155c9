"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` complex arrays of shape ``(n, n)``.  The
functions here add the structural checks (Hermiticity, finiteness) that
the rest of the package relies on, and keep every numerical tolerance in
one place (:data:`TOL`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimMismatch, NoConvergence, NotHermitian


@dataclass(frozen=True)
class Tolerances:
    """Default tolerances; every module reads its defaults from :data:`TOL`."""

    hermitian: float = 1e-10      # max |M - M^dagger| entry
    unitary: float = 1e-10        # max |U^dagger U - I| entry
    ray: float = 1e-10            # 1 - |<u|v>|^2 deficit for equal rays
    unbiased: float = 1e-10       # ||<u|v>|^2 - 1/n|
    normalisation: float = 1e-12  # sums that must equal one
    boundary: float = 1e-12       # band around zero reported as "boundary"
    probability: float = 1e-10    # probabilities allowed to dip below zero
    cluster: float = 1e-9         # relative gap for degenerate eigenvalues
    lp: float = 1e-9              # simplex pivot tolerance
    validation: float = 1e-9      # pass threshold for validation reports


TOL = Tolerances()


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a finite square complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimMismatch(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def hermiticity_defect(m) -> float:
    a = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(a - dagger(a)), initial=0.0))


def is_hermitian(m, tol: float = TOL.hermitian) -> bool:
    return hermiticity_defect(m) <= tol


def unitarity_defect(u) -> float:
    a = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(dagger(a) @ a - np.eye(a.shape[0]))))


def check_hermitian(m, tol: float = TOL.hermitian, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m, name)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitian(f"{name} is not Hermitian (max |M - M^dagger| = {defect:.3e})")
    return a


def hermitian_eig(m, tol: float = TOL.hermitian) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned in ascending order; the eigenvectors are the
    columns of a unitary matrix.  The input is symmetrised before the
    LAPACK call so that round-off in the strictly Hermitian part cannot
    leak into the spectrum.

    Raises
    ------
    NotHermitian
        If any entry of ``m - m^dagger`` exceeds ``tol`` in magnitude.
    NoConvergence
        If the underlying eigensolver fails to converge.
    """
    a = check_hermitian(m, tol)
    a = 0.5 * (a + dagger(a))
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return EigenSystem(w, v)


def eigenvalue_clusters(eigenvalues, rel_gap: float = TOL.cluster) -> list[list[int]]:
    """Group indices of sorted eigenvalues whose consecutive gaps are below
    ``rel_gap * max(1, max|lambda|)``."""
    w = np.asarray(eigenvalues, dtype=float)
    if w.size == 0:
        return []
    scale = rel_gap * max(1.0, float(np.max(np.abs(w))))
    clusters = [[0]]
    for i in range(1, w.size):
        if w[i] - w[i - 1] <= scale:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def unitary_exp(m, s: float = 1.0) -> np.ndarray:
    """``exp(i s M)`` for Hermitian ``M`` via its spectral decomposition."""
    w, v = hermitian_eig(m)
    return (v * np.exp(1j * s * w)) @ dagger(v)


def frobenius_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``Tr(A^dagger B)``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def commutator_norm(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(np.linalg.norm(a @ b - b @ a))


def joint_eigenbasis(operators, rel_gap: float = TOL.cluster) -> np.ndarray:
    """Common eigenbasis of a family of commuting Hermitian matrices.

    A fixed generic real combination of the operators is diagonalised; for
    a complete commuting set this combination has a simple spectrum.
    """
    ops = [as_matrix(o) for o in operators]
    # irrational weights avoid accidental degeneracies of the combination
    weights = np.sqrt(np.arange(2, len(ops) + 2)) + np.pi * np.arange(1, len(ops) + 1) / 7
    combo = sum(wt * o for wt, o in zip(weights, ops))
    w, v = hermitian_eig(combo)
    if any(len(c) > 1 for c in eigenvalue_clusters(w, rel_gap)):
        raise ValueError("operators do not determine a unique joint eigenbasis")
    return v


def matrix_to_dict(m) -> dict:
    a = np.asarray(m, dtype=complex)
    return {
        "dim": int(a.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_dict(d: dict) -> np.ndarray:
    n = int(d["dim"])
    entries = np.asarray(d["entries"], dtype=float)
    if entries.shape != (n * n, 2):
        raise DimMismatch(f"expected {n * n} [re, im] pairs, got array of shape {entries.shape}")
    return as_matrix((entries[:, 0] + 1j * entries[:, 1]).reshape(n, n))


def frozen(a: np.ndarray) -> np.ndarray:
    """Return a read-only copy of ``a``."""
    out = np.array(a, copy=True)
    out.setflags(write=False)
    return out
