"""Joint quasiprobability distribution (QPD) over MUB measurement outcomes.

For a state with Bloch blocks ``theta_1 .. theta_{n+1}`` and outcome
alphabet ``Z`` the closed form is

    p(k_1, ..., k_{n+1}) = (1 + sum_i Z[k_i] . theta_i) / n^(n+1),

stored as a dense array with one axis per commuting set (axis ``i - 1``
for set ``i``), so ``values.ravel()`` is in k1-major order.

The Margenau-Hill characteristic function (:func:`mh_characteristic`)
is computed independently from matrix exponentials and averaged over all
operator orderings; :func:`fourier_consistency` compares the two.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .csco import CscoBasis
from .errors import DimMismatch, EmptySubset, IndexOutOfRange
from .numerics import TOL, dagger, frozen, unitary_exp
from .state import as_bloch, bloch_from_density, make_rng, random_state

MAX_TABLE_SIZE = 50_000_000


@dataclass(frozen=True, eq=False)
class QpdTable:
    dim: int
    values: np.ndarray
    alphabet: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        n = self.dim
        if v.size != n ** (n + 1):
            raise DimMismatch(f"table for n={n} needs {n ** (n + 1)} entries, got {v.size}")
        object.__setattr__(self, "values", frozen(v.reshape((n,) * (n + 1))))

    @property
    def flat(self) -> np.ndarray:
        return self.values.ravel()

    def to_dict(self) -> dict:
        return {"dim": self.dim, "values": [float(x) for x in self.flat], "order": "k1-major"}

    @classmethod
    def from_dict(cls, d: dict, alphabet=None) -> "QpdTable":
        if d.get("order", "k1-major") != "k1-major":
            raise ValueError(f"unsupported table order {d['order']!r}")
        return cls(int(d["dim"]), np.asarray(d["values"], dtype=float), alphabet)


def _check_subset(subset, n: int) -> tuple[int, ...]:
    if subset is None:
        return tuple(range(1, n + 2))
    s = tuple(sorted({int(i) for i in subset}))
    if not s:
        raise EmptySubset("subset of commuting sets must be non-empty")
    if s[0] < 1 or s[-1] > n + 1:
        raise IndexOutOfRange(f"set indices must lie in 1..{n + 1}, got {s}")
    return s


def _outer_sum(rows) -> np.ndarray:
    total = np.zeros(())
    for r in rows:
        total = np.add.outer(total, r)
    return total


def qpd_table(s, basis: CscoBasis) -> QpdTable:
    """Closed-form QPD for the state ``s`` (a :class:`BlochState` or theta)."""
    n = basis.dim
    s = as_bloch(s, n)
    if n ** (n + 1) > MAX_TABLE_SIZE:
        raise ValueError(f"dense table with {n ** (n + 1)} entries is too large")
    scores = s.blocks @ basis.alphabet.T  # scores[i, c] = Z[c] . theta_i
    values = (1.0 + _outer_sum(scores)) / n ** (n + 1)
    return QpdTable(n, values, basis.alphabet)


def qpd_marginal(table: QpdTable, subset) -> np.ndarray:
    """Sum out every commuting set not in ``subset`` (sets counted from 1).

    The result keeps one axis per set in ``subset``, in increasing order.
    """
    keep = _check_subset(subset, table.dim)
    drop = tuple(ax for ax in range(table.dim + 1) if ax + 1 not in keep)
    return table.values.sum(axis=drop) if drop else np.array(table.values)


def marginal_closed_form(s, basis: CscoBasis, subset) -> np.ndarray:
    """``(1 + sum_{i in S} Z[k_i] . theta_i) / n^|S|`` evaluated directly."""
    n = basis.dim
    s = as_bloch(s, n)
    keep = _check_subset(subset, n)
    scores = s.blocks[[i - 1 for i in keep]] @ basis.alphabet.T
    return (1.0 + _outer_sum(scores)) / n ** len(keep)


def outcome_projectors(basis: CscoBasis, i: int) -> np.ndarray:
    """Projectors ``(I + Z[c] . O_i) / n`` onto the joint eigenvectors of set
    ``i``; shape ``(n, n, n)`` indexed by outcome ``c``."""
    n = basis.dim
    ops = np.array(basis.set_operators(i))
    return (np.eye(n) + np.tensordot(basis.alphabet, ops, axes=1)) / n


def single_set_probabilities(rho, basis: CscoBasis, i: int) -> np.ndarray:
    """Born probabilities ``<z|rho|z>`` for the outcomes of set ``i``."""
    rho = np.asarray(rho, dtype=complex)
    return np.einsum("ab,cba->c", rho, outcome_projectors(basis, i)).real


def measurement_operator(basis: CscoBasis, t, i: int) -> np.ndarray:
    """``M_i = sum_k t_{i,k} O_{i,k}`` for a full-length Fourier point ``t``."""
    n = basis.dim
    tb = np.asarray(t, dtype=float).reshape(n + 1, n - 1)
    return np.tensordot(tb[i - 1], np.array(basis.set_operators(i)), axes=1)


def mh_characteristic(rho, basis: CscoBasis, t, subset=None) -> complex:
    """Margenau-Hill characteristic function.

    ``(1/|S|!) sum_pi Tr[rho exp(i M_pi(1)) ... exp(i M_pi(|S|))]`` over all
    orderings of the sets in ``subset`` (default: all sets).  Each
    exponential is computed once from the spectral decomposition.
    """
    n = basis.dim
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (n, n):
        raise DimMismatch(f"density matrix must be {n}x{n}")
    t = np.asarray(t, dtype=float)
    if t.shape != (n * n - 1,):
        raise DimMismatch(f"Fourier point must have {n * n - 1} entries")
    keep = _check_subset(subset, n)
    exps = {i: unitary_exp(measurement_operator(basis, t, i)) for i in keep}
    total = 0j
    for order in permutations(keep):
        prod = np.eye(n, dtype=complex)
        for i in order:
            prod = prod @ exps[i]
        total += np.trace(rho @ prod)
    return complex(total / math.factorial(len(keep)))


def mh_pair_distribution(rho, basis: CscoBasis, i: int, j: int) -> np.ndarray:
    """Pairwise Margenau-Hill distribution ``Re Tr[rho P_i(z) P_j(z')]``.

    This is the exact inverse of the two-set characteristic function; it
    coincides with the closed-form marginal only when the Bloch blocks of
    the sets other than ``i`` and ``j`` vanish.
    """
    rho = np.asarray(rho, dtype=complex)
    pi = outcome_projectors(basis, i)
    pj = outcome_projectors(basis, j)
    return np.einsum("ab,xbc,yca->xy", rho, pi, pj).real


def fourier_sum(values, alphabet, t_blocks) -> complex:
    """``sum_k exp(i sum_a Z[k_a] . t_a) values[k]`` with one ``t`` block per
    axis of ``values``."""
    acc = np.asarray(values, dtype=complex)
    z = np.asarray(alphabet, dtype=float)
    for tb in t_blocks:
        # contract the leading axis with its phase vector
        acc = np.tensordot(np.exp(1j * (z @ np.asarray(tb, dtype=float))), acc, axes=(0, 0))
    return complex(acc)


def fourier_from_table(table: QpdTable, t, alphabet=None) -> complex:
    """Discrete Fourier transform of the full table at point ``t``."""
    z = table.alphabet if alphabet is None else alphabet
    if z is None:
        raise ValueError("table carries no alphabet; pass one explicitly")
    n = table.dim
    tb = np.asarray(t, dtype=float).reshape(n + 1, n - 1)
    return fourier_sum(table.values, z, tb)


def sample_fourier_point(rng: np.random.Generator, n: int, subset) -> np.ndarray:
    """Uniform point in ``[-pi, pi]`` on the blocks of ``subset``, zero elsewhere."""
    keep = _check_subset(subset, n)
    t = np.zeros((n + 1, n - 1))
    for i in keep:
        t[i - 1] = rng.uniform(-np.pi, np.pi, n - 1)
    return t.ravel()


def fourier_consistency(rho, basis: CscoBasis, samples: int = 100, seed=0, subset=None) -> float:
    """Largest ``|mh_characteristic - fourier_from_table|`` over random points.

    Points are drawn uniformly in ``[-pi, pi]`` on the blocks of ``subset``
    and set to zero on the other blocks, so the table side reduces to the
    Fourier transform of the corresponding marginal.
    """
    n = basis.dim
    table = qpd_table(bloch_from_density(rho, basis), basis)
    rng = make_rng(seed)
    worst = 0.0
    for _ in range(samples):
        t = sample_fourier_point(rng, n, subset)
        dev = abs(mh_characteristic(rho, basis, t, subset) - fourier_from_table(table, t))
        worst = max(worst, dev)
    return worst


@dataclass
class SweepResult:
    subset: tuple[int, ...]
    deviations: np.ndarray

    @property
    def max_deviation(self) -> float:
        return float(np.max(self.deviations, initial=0.0))


def _sweep_one(basis: CscoBasis, keep, seed, k: int) -> float:
    n = basis.dim
    rho = random_state(n, "mixed", seed=(seed, k, 0))
    t = sample_fourier_point(make_rng((seed, k, 1)), n, keep)
    theta = bloch_from_density(rho, basis)
    # Fourier transform of the closed-form marginal on the sampled sets
    expected = fourier_sum(marginal_closed_form(theta, basis, keep), basis.alphabet,
                           t.reshape(n + 1, n - 1)[[i - 1 for i in keep]])
    return abs(mh_characteristic(rho, basis, t, keep) - expected)


def mh_fourier_sweep(basis: CscoBasis, subset=None, samples: int = 100, seed=0,
                     threads: int = 1) -> SweepResult:
    """MH-vs-closed-form deviation over ``samples`` random (state, point) pairs.

    Sample ``k`` draws a Hilbert-Schmidt state from seed ``(seed, k, 0)``
    and a Fourier point from ``(seed, k, 1)``; results are returned in
    sample order regardless of ``threads``.
    """
    keep = _check_subset(subset, basis.dim)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            devs = list(pool.map(lambda k: _sweep_one(basis, keep, seed, k), range(samples)))
    else:
        devs = [_sweep_one(basis, keep, seed, k) for k in range(samples)]
    return SweepResult(keep, np.array(devs))


@dataclass
class Classification:
    min_value: float
    argmin: tuple[int, ...]
    margin: float
    status: str

    @property
    def nonnegative(self) -> bool:
        return self.status != "outside"

    def to_dict(self) -> dict:
        return {
            "min_value": self.min_value,
            "argmin": list(self.argmin),
            "margin": self.margin,
            "status": self.status,
            "nonnegative": self.nonnegative,
        }


def boundary_status(margin: float, band: float = TOL.boundary) -> str:
    if margin > band:
        return "inside"
    if margin >= -band:
        return "boundary"
    return "outside"


def classify(s, basis: CscoBasis) -> Classification:
    """Locate the most negative table entry.

    ``margin`` is that entry times ``n^(n+1)``; entries within the boundary
    band of zero count as boundary, not negative.
    """
    table = qpd_table(s, basis)
    n = basis.dim
    flat_idx = int(np.argmin(table.flat))
    argmin = tuple(int(k) for k in np.unravel_index(flat_idx, table.values.shape))
    min_value = float(table.flat[flat_idx])
    margin = min_value * n ** (n + 1)
    return Classification(min_value, argmin, margin, boundary_status(margin))


def unitary_pair_formula(rho, family, i: int, j: int) -> np.ndarray:
    """``Re{<z_j|U_j U_i^dagger|z_i> <z_i|U_i rho U_j^dagger|z_j>}`` written with
    the MUB unitaries ``U = B^dagger`` rather than projectors."""
    rho = np.asarray(rho, dtype=complex)
    ui = dagger(family.bases[i - 1])
    uj = dagger(family.bases[j - 1])
    a = uj @ dagger(ui)          # a[zj, zi] = <z_j|U_j U_i^dagger|z_i>
    b = ui @ rho @ dagger(uj)    # b[zi, zj] = <z_i|U_i rho U_j^dagger|z_j>
    return (a.T * b).real
