"""Complete sets of commuting operators (CSCOs) driven by MUBs.

The first commuting set consists of the diagonal spherical tensor
operators ``tau^k_0`` (k = 1 .. n-1) of spin ``j = (n-1)/2``; the remaining
``n`` sets are obtained by conjugating them with the MUB unitaries.  Every
operator is Hermitian, traceless and normalised to ``Tr(O_i O_j) = n delta_ij``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import fixtures
from .errors import DimMismatch, InvalidQuantumNumbers, UnsupportedDimension
from .mub import MubFamily, build_mub, ray_deficit
from .numerics import (
    TOL,
    as_matrix,
    commutator_norm,
    dagger,
    frozen,
    hermitian_eig,
    hermiticity_defect,
    joint_eigenbasis,
    matrix_from_dict,
    matrix_to_dict,
)


def _twice(x, name: str) -> int:
    t = 2 * Fraction(x)
    if t.denominator != 1:
        raise InvalidQuantumNumbers(f"{name}={x} is not an integer or half-integer")
    return int(t)


def clebsch_gordan(j1, m1, j2, m2, j, m) -> float:
    """Condon-Shortley coefficient ``<j1 m1; j2 m2 | j m>`` (Racah formula).

    Arguments may be integers, half-integers given as floats, or Fractions.
    Returns 0 for couplings forbidden by the selection rules.
    """
    tj1, tm1, tj2, tm2, tj, tm = (
        _twice(v, nm) for v, nm in zip((j1, m1, j2, m2, j, m), ("j1", "m1", "j2", "m2", "j", "m"))
    )
    if min(tj1, tj2, tj) < 0:
        raise InvalidQuantumNumbers("angular momenta must be non-negative")
    for tjx, tmx in ((tj1, tm1), (tj2, tm2), (tj, tm)):
        if abs(tmx) > tjx or (tjx - tmx) % 2:
            raise InvalidQuantumNumbers(f"projection {tmx / 2} incompatible with {tjx / 2}")
    if tm1 + tm2 != tm or not abs(tj1 - tj2) <= tj <= tj1 + tj2 or (tj1 + tj2 + tj) % 2:
        return 0.0

    f = math.factorial
    # all arguments below are integers: twice-values combine pairwise
    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tj2 + tj) // 2
    c = (-tj1 + tj2 + tj) // 2
    prefactor = Fraction((tj + 1) * f(a) * f(b) * f(c), f((tj1 + tj2 + tj) // 2 + 1))
    prefactor *= (
        f((tj + tm) // 2) * f((tj - tm) // 2)
        * f((tj1 - tm1) // 2) * f((tj1 + tm1) // 2)
        * f((tj2 - tm2) // 2) * f((tj2 + tm2) // 2)
    )
    s1 = (tj1 - tm1) // 2
    s2 = (tj2 + tm2) // 2
    s3 = (tj - tj2 + tm1) // 2
    s4 = (tj - tj1 - tm2) // 2
    total = Fraction(0)
    for k in range(max(0, -s3, -s4), min(a, s1, s2) + 1):
        denom = f(k) * f(a - k) * f(s1 - k) * f(s2 - k) * f(s3 + k) * f(s4 + k)
        total += Fraction((-1) ** k, denom)
    return float(total) * math.sqrt(prefactor)


def clebsch_gordan_q0(j, k: int, m) -> float:
    """``C(j k j; m 0 m)``, the coefficient behind the diagonal tensors."""
    n2 = _twice(j, "j")
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= n2):
        raise InvalidQuantumNumbers(f"rank k={k} must satisfy 1 <= k <= 2j = {n2}")
    return clebsch_gordan(j, m, k, 0, j, m)


@dataclass(frozen=True, eq=False)
class TensorOperator:
    j: float
    k: int
    matrix: np.ndarray


def tensor_diag(j, k: int) -> TensorOperator:
    """Diagonal tensor ``tau^k_0`` with entries ``sqrt(2k+1) C(j k j; m 0 m)``,
    ``m`` running from ``j`` down to ``-j``."""
    n = _twice(j, "j") + 1
    ms = [Fraction(n - 1, 2) - i for i in range(n)]
    diag = [math.sqrt(2 * k + 1) * clebsch_gordan_q0(j, k, m) for m in ms]
    return TensorOperator(float(Fraction(n - 1, 2)), k, frozen(np.diag(diag).astype(complex)))


@dataclass(frozen=True, eq=False)
class CscoBasis:
    """``n + 1`` commuting sets of ``n - 1`` operators and their shared
    outcome alphabet (row ``c`` = eigenvalue tuple of diagonal position ``c``)."""

    dim: int
    sets: tuple[tuple[np.ndarray, ...], ...]
    alphabet: np.ndarray = field(repr=False)

    @property
    def operators(self) -> list[np.ndarray]:
        return [o for s in self.sets for o in s]

    def set_operators(self, i: int) -> tuple[np.ndarray, ...]:
        """Operators of commuting set ``i`` (counted from 1)."""
        if not 1 <= i <= len(self.sets):
            raise IndexError(f"set index {i} outside 1..{len(self.sets)}")
        return self.sets[i - 1]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "sets": [[matrix_to_dict(o) for o in s] for s in self.sets],
            "alphabet": [[float(x) for x in row] for row in self.alphabet],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CscoBasis":
        sets = [[matrix_from_dict(m) for m in s] for s in d["sets"]]
        return make_basis(int(d["dim"]), sets, np.asarray(d["alphabet"], dtype=float))


def make_basis(n: int, sets, alphabet=None) -> CscoBasis:
    sets = [[as_matrix(o) for o in s] for s in sets]
    if len(sets) != n + 1 or any(len(s) != n - 1 for s in sets):
        raise DimMismatch(f"need {n + 1} sets of {n - 1} operators for n={n}")
    if any(o.shape != (n, n) for s in sets for o in s):
        raise DimMismatch(f"operators must be {n}x{n}")
    frozen_sets = tuple(tuple(frozen(o) for o in s) for s in sets)
    if alphabet is None:
        alphabet = _alphabet_from_sets(frozen_sets)
    return CscoBasis(n, frozen_sets, frozen(np.asarray(alphabet, dtype=float)))


def _alphabet_from_sets(sets) -> np.ndarray:
    for s in sets:
        if all(np.allclose(o, np.diag(np.diag(o)), atol=TOL.hermitian) for o in s):
            return np.array([np.diag(o).real for o in s]).T
    # no diagonal set: use the joint spectrum of set 1, sorted descending
    tuples = joint_spectrum(sets[0])
    order = sorted(range(len(tuples)), key=lambda r: tuple(-tuples[r]))
    return tuples[order]


def joint_spectrum(operators, basis=None) -> np.ndarray:
    """Eigenvalue tuples ``(<v|O_1|v>, ..., <v|O_k|v>)`` for each column ``v``
    of ``basis`` (default: the joint eigenbasis of ``operators``)."""
    v = joint_eigenbasis(operators) if basis is None else np.asarray(basis)
    return np.array([[np.vdot(v[:, c], o @ v[:, c]).real for o in operators]
                     for c in range(v.shape[1])])


@lru_cache(maxsize=None)
def build_csco(n: int) -> CscoBasis:
    """Generate the CSCO for dimension ``n`` from tensors and MUB unitaries."""
    family = build_mub(n)
    j = Fraction(n - 1, 2)
    diagonal = [tensor_diag(j, k).matrix for k in range(1, n)]
    sets = [diagonal]
    for b in family.bases[1:]:
        # U^dagger D U with U = b^dagger
        sets.append([b @ d @ dagger(b) for d in diagonal])
    alphabet = np.array([np.diag(d).real for d in diagonal]).T
    return make_basis(n, sets, alphabet)


@lru_cache(maxsize=None)
def paper_fixture(n: int) -> CscoBasis:
    """The stored explicit operators for ``n`` in {2, 3, 4}.

    For ``n = 2`` the Pauli matrices keep their conventional order
    (x, y, z), so the diagonal set is the third one.
    """
    try:
        sets = fixtures.operator_sets(n)
    except KeyError:
        raise UnsupportedDimension(f"no stored operators for n={n}; available: 2, 3, 4") from None
    return make_basis(n, sets)


def outcome_alphabet(basis: CscoBasis) -> np.ndarray:
    """Array of shape ``(n, n-1)``; row ``c`` is the eigenvalue tuple shared by
    the ``c``-th joint eigenvector of each commuting set."""
    return np.array(basis.alphabet, copy=True)


def alphabet_defects(alphabet) -> dict:
    """Deviations from the identities sum(z) = 0, z.z = n-1, z.z' = -1."""
    z = np.asarray(alphabet, dtype=float)
    n = z.shape[0]
    gram = z @ z.T
    off = gram[~np.eye(n, dtype=bool)]
    return {
        "sum": float(np.max(np.abs(z.sum(axis=0)), initial=0.0)),
        "norm": float(np.max(np.abs(np.diag(gram) - (n - 1)))),
        "cross": float(np.max(np.abs(off + 1.0), initial=0.0)),
    }


def gram_matrix(basis: CscoBasis) -> np.ndarray:
    ops = np.array(basis.operators)
    flat = ops.reshape(len(ops), -1)
    return np.conj(flat) @ flat.T


def orthonormality_defect(basis: CscoBasis) -> float:
    g = gram_matrix(basis)
    return float(np.max(np.abs(g - basis.dim * np.eye(len(g)))))


def trace_defect(basis: CscoBasis) -> float:
    return float(max(abs(np.trace(o)) for o in basis.operators))


def commutator_defect(basis: CscoBasis) -> float:
    return float(max(
        (commutator_norm(a, b) for s in basis.sets for a, b in combinations(s, 2)),
        default=0.0,
    ))


@dataclass
class CscoReport:
    orthonormality: float
    trace: float
    hermiticity: float
    commutator: float
    ray_mismatch: float
    alphabet_mismatch: float
    set_to_basis: list[int]
    spectra: list[np.ndarray]
    tol: float = TOL.validation

    @property
    def passed(self) -> bool:
        return (
            max(self.orthonormality, self.trace, self.hermiticity, self.commutator,
                self.ray_mismatch, self.alphabet_mismatch) < self.tol
            and sorted(self.set_to_basis) == list(range(1, len(self.set_to_basis) + 1))
        )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "orthonormality": self.orthonormality,
            "trace": self.trace,
            "hermiticity": self.hermiticity,
            "commutator": self.commutator,
            "ray_mismatch": self.ray_mismatch,
            "alphabet_mismatch": self.alphabet_mismatch,
            "set_to_basis": self.set_to_basis,
            "spectra": [[float(x) for x in s] for s in self.spectra],
        }


def _set_eigenbasis(ops) -> np.ndarray | None:
    try:
        return joint_eigenbasis(ops)
    except ValueError:
        return None


def validate_csco(basis: CscoBasis, family: MubFamily, tol: float = TOL.validation) -> CscoReport:
    """Check orthonormality, tracelessness, commutation and the MUB relation.

    Each commuting set is aligned with the MUB basis whose rays best match
    its joint eigenbasis; ``ray_mismatch`` is the worst deficit after that
    alignment, and ``set_to_basis`` records it (bases counted from 1).  The
    report passes only if the alignment is a bijection and every figure is
    below ``tol``.
    """
    if basis.dim != family.dim:
        raise DimMismatch(f"basis has n={basis.dim} but family has n={family.dim}")
    alphabet = basis.alphabet
    set_to_basis: list[int] = []
    worst_ray = 0.0
    worst_alpha = 0.0
    for ops in basis.sets:
        v = _set_eigenbasis(ops)
        if v is None:
            set_to_basis.append(0)
            worst_ray = max(worst_ray, 1.0)
            continue
        deficits = [ray_deficit(v, b) for b in family.bases]
        best = int(np.argmin(deficits))
        set_to_basis.append(best + 1)
        worst_ray = max(worst_ray, deficits[best])
        tuples = joint_spectrum(ops, v)
        worst_alpha = max(worst_alpha, _multiset_distance(tuples, alphabet))
    spectra = [hermitian_eig(o).eigenvalues if hermiticity_defect(o) <= TOL.hermitian
               else np.linalg.eigvals(o).real for o in basis.operators]
    return CscoReport(
        orthonormality=orthonormality_defect(basis),
        trace=trace_defect(basis),
        hermiticity=float(max(hermiticity_defect(o) for o in basis.operators)),
        commutator=commutator_defect(basis),
        ray_mismatch=worst_ray,
        alphabet_mismatch=worst_alpha,
        set_to_basis=set_to_basis,
        spectra=spectra,
        tol=tol,
    )


def _multiset_distance(tuples: np.ndarray, alphabet: np.ndarray) -> float:
    remaining = list(range(len(alphabet)))
    worst = 0.0
    for t in tuples:
        dists = [float(np.max(np.abs(t - alphabet[r]))) for r in remaining]
        best = int(np.argmin(dists))
        worst = max(worst, dists[best])
        remaining.pop(best)
    return worst


def span_residual(reference: CscoBasis, generated: CscoBasis) -> float:
    """Worst distance of a reference operator from the span of the matching
    generated set.

    Every reference set is paired with the generated set that contains it
    best (the sets of either basis span mutually orthogonal subspaces, so
    the pairing is unambiguous); the residual is the Frobenius norm of the
    component orthogonal to that span.
    """
    if reference.dim != generated.dim:
        raise DimMismatch("bases have different dimensions")
    n = generated.dim
    worst = 0.0
    for ref_set in reference.sets:
        best = math.inf
        for gen_set in generated.sets:
            res = 0.0
            for o in ref_set:
                proj = sum(np.vdot(g, o) / n * g for g in gen_set)
                res = max(res, float(np.linalg.norm(o - proj)))
            best = min(best, res)
        worst = max(worst, best)
    return worst
