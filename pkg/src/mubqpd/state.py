"""Bloch-vector parameterisation of density matrices in a CSCO basis.

``rho = (I + sum_j theta_j O_j) / n`` with ``theta_j = Tr(rho O_j)``; the
vector ``theta`` has ``n^2 - 1`` entries split into ``n + 1`` blocks of
``n - 1``, one block per commuting set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csco import CscoBasis
from .errors import BallViolation, DimMismatch, IndexOutOfRange, NonHermitianInput
from .mub import MubFamily
from .numerics import TOL, as_matrix, frozen, hermitian_eig, hermiticity_defect


def make_rng(seed) -> np.random.Generator:
    """Counter-based (Philox) generator; ``seed`` may be an int or a sequence
    of ints, e.g. ``(seed, sample_index)`` for per-sample streams."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


@dataclass(frozen=True, eq=False)
class BlochState:
    dim: int
    theta: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.shape != (self.dim**2 - 1,):
            raise DimMismatch(f"theta must have {self.dim**2 - 1} entries for n={self.dim}")
        object.__setattr__(self, "theta", frozen(theta))

    @property
    def blocks(self) -> np.ndarray:
        """``theta`` reshaped to ``(n + 1, n - 1)``, one row per commuting set."""
        return self.theta.reshape(self.dim + 1, self.dim - 1)

    @property
    def norm_squared(self) -> float:
        return float(self.theta @ self.theta)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "theta": [float(x) for x in self.theta]}

    @classmethod
    def from_dict(cls, d: dict) -> "BlochState":
        return cls(int(d["dim"]), np.asarray(d["theta"], dtype=float))


def as_bloch(s, n: int) -> BlochState:
    if isinstance(s, BlochState):
        if s.dim != n:
            raise DimMismatch(f"state has n={s.dim}, expected n={n}")
        return s
    return BlochState(n, np.asarray(s, dtype=float))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A Hermitian unit-trace matrix; positivity is reported, not enforced."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", frozen(as_matrix(self.matrix, "density matrix")))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def min_eigenvalue(self) -> float:
        return float(hermitian_eig(self.matrix).eigenvalues[0])

    @property
    def is_positive(self) -> bool:
        return self.min_eigenvalue >= -TOL.probability


def _density(rho, n: int | None = None) -> np.ndarray:
    m = as_matrix(rho, "density matrix")
    if n is not None and m.shape[0] != n:
        raise DimMismatch(f"density matrix is {m.shape[0]}x{m.shape[0]}, expected n={n}")
    return m


def density_from_bloch(s, basis: CscoBasis) -> DensityMatrix:
    """``(I + sum theta_j O_j) / n``.

    Raises :class:`BallViolation` outside the ball ``|theta|^2 <= n - 1``.
    Points inside the ball need not give positive matrices for ``n >= 3``;
    check :attr:`DensityMatrix.min_eigenvalue`.
    """
    n = basis.dim
    s = as_bloch(s, n)
    if s.norm_squared > n - 1 + TOL.normalisation:
        raise BallViolation(f"|theta|^2 = {s.norm_squared:.15g} exceeds n - 1 = {n - 1}")
    ops = np.array(basis.operators)
    rho = (np.eye(n) + np.tensordot(s.theta, ops, axes=1)) / n
    return DensityMatrix(rho)


def bloch_from_density(rho, basis: CscoBasis) -> BlochState:
    n = basis.dim
    m = _density(rho, n)
    defect = hermiticity_defect(m)
    if defect > TOL.hermitian:
        raise NonHermitianInput(f"density matrix not Hermitian (defect {defect:.3e})")
    ops = np.array(basis.operators)
    # Tr(rho O) = sum_ab rho_ab O_ba
    theta = np.einsum("ab,kba->k", m, ops)
    return BlochState(n, theta.real)


def purity(rho) -> float:
    m = np.asarray(rho, dtype=complex)
    return float(np.real(np.vdot(m, m)))


def random_state(n: int, kind: str = "mixed", seed=0) -> DensityMatrix:
    """Haar-random pure state or Hilbert-Schmidt random mixed state."""
    rng = make_rng(seed)
    if kind == "pure":
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi /= np.linalg.norm(psi)
        return DensityMatrix(np.outer(psi, psi.conj()))
    if kind == "mixed":
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = g @ g.conj().T
        return DensityMatrix(rho / np.trace(rho).real)
    raise ValueError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def probability_map(basis: CscoBasis, family: MubFamily) -> tuple[np.ndarray, np.ndarray]:
    """Affine map ``theta -> p`` as ``(L, c)`` with ``p = L @ theta + c``.

    Row ``r = i * n + c`` of ``L`` belongs to vector ``c`` of basis ``i``
    (both counted from 0).
    """
    n = basis.dim
    if family.dim != n:
        raise DimMismatch("basis and family dimensions differ")
    ops = np.array(basis.operators)
    rows = []
    for b in family.bases:
        for c in range(n):
            v = b[:, c]
            rows.append([np.vdot(v, o @ v).real / n for o in ops])
    return np.array(rows), np.full(n * (n + 1), 1.0 / n)


def probability_coordinates(s, basis: CscoBasis, family: MubFamily) -> np.ndarray:
    """MUB projector expectations ``Tr(rho Pi)``, shape ``(n + 1, n)``."""
    n = basis.dim
    s = as_bloch(s, n)
    lin, const = probability_map(basis, family)
    return (lin @ s.theta + const).reshape(n + 1, n)


def hamiltonian(h, basis: CscoBasis, set_index: int = 1) -> np.ndarray:
    """``h_0 I + sum_k h_k O_k`` over the operators of one commuting set."""
    h = np.asarray(h, dtype=float)
    n = basis.dim
    if h.shape != (n,):
        raise DimMismatch(f"need h_0 plus {n - 1} coefficients")
    ops = basis.set_operators(set_index)
    return h[0] * np.eye(n) + sum(hk * o for hk, o in zip(h[1:], ops))


def hamiltonian_expectation(h, s, set_index: int = 1) -> float:
    """``h_0 + sum_k h_k theta_{set, k}``, the expectation of
    :func:`hamiltonian` in the state ``s``."""
    h = np.asarray(h, dtype=float)
    if not isinstance(s, BlochState):
        raise TypeError("s must be a BlochState")
    if h.shape != (s.dim,):
        raise DimMismatch(f"need h_0 plus {s.dim - 1} coefficients")
    if not 1 <= set_index <= s.dim + 1:
        raise IndexOutOfRange(f"set index {set_index} outside 1..{s.dim + 1}")
    return float(h[0] + h[1:] @ s.blocks[set_index - 1])
