"""Complete sets of mutually unbiased bases (MUBs).

A family for dimension ``n`` holds ``n + 1`` unitary matrices whose
columns are the basis vectors; basis 0 is the computational basis.  The
connecting unitaries follow the convention ``U_i = B_i^dagger``, so that
``U_i^dagger D U_i`` is diagonal in basis ``i`` whenever ``D`` is diagonal.

Supported dimensions are 2, the odd primes up to 13, and 4 (from stored
tables).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fixtures
from .errors import IndexOutOfRange, UnsupportedDimension
from .numerics import TOL, dagger, frozen

ODD_PRIMES = (3, 5, 7, 11, 13)
SUPPORTED_DIMS = (2, 4, *ODD_PRIMES)

# basis ordering chosen so that twisting basis 2 by t = 2 pi / 3 gives basis 3
TWIST_TIMES = {3: 2 * np.pi / 3, 4: 4 * np.pi / 3}


@dataclass(frozen=True, eq=False)
class MubFamily:
    dim: int
    bases: tuple[np.ndarray, ...]

    @property
    def unitaries(self) -> tuple[np.ndarray, ...]:
        return tuple(frozen(dagger(b)) for b in self.bases)

    def __len__(self) -> int:
        return len(self.bases)


def _odd_prime_basis(n: int, i: int) -> np.ndarray:
    # column c, row k: omega^(a k^2 + (a - c) k) / sqrt(n) with a = -(i - 1);
    # for n = 3 this reproduces the spin-1 unitaries verbatim
    a = -(i - 1) % n
    k = np.arange(n)[:, None]
    c = np.arange(n)[None, :]
    expo = (a * k * k + (a - c) * k) % n
    return np.exp(2j * np.pi * expo / n) / np.sqrt(n)


@lru_cache(maxsize=None)
def build_mub(n: int) -> MubFamily:
    """Construct the complete MUB family for dimension ``n``.

    Raises
    ------
    UnsupportedDimension
        If ``n`` is not 2, 4 or an odd prime up to 13.
    """
    if n not in SUPPORTED_DIMS:
        raise UnsupportedDimension(
            f"no built-in MUB construction for n={n}; supported: {sorted(SUPPORTED_DIMS)}"
        )
    if n == 2:
        s = 1 / np.sqrt(2)
        bases = [
            np.eye(2, dtype=complex),
            np.array([[s, s], [s, -s]], dtype=complex),
            np.array([[s, s], [1j * s, -1j * s]]),
        ]
    elif n == 4:
        bases = [np.eye(4, dtype=complex), *fixtures.MUB4]
    else:
        bases = [np.eye(n, dtype=complex)] + [_odd_prime_basis(n, i) for i in range(1, n + 1)]
    return MubFamily(n, tuple(frozen(b) for b in bases))


def basis_unitary(family: MubFamily, i: int) -> np.ndarray:
    """Unitary ``U_i`` (``i`` counted from 1) taking basis ``i`` to the
    computational basis; ``U_1`` is the identity."""
    if not 1 <= i <= len(family.bases):
        raise IndexOutOfRange(f"basis index {i} outside 1..{len(family.bases)}")
    return frozen(dagger(family.bases[i - 1]))


def overlaps(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of squared overlaps ``|<a_r|b_c>|^2`` between columns."""
    return np.abs(dagger(a) @ b) ** 2


def verify_unbiased(family: MubFamily) -> float:
    """Largest deviation of a cross-basis squared overlap from ``1/n``."""
    n = family.dim
    worst = 0.0
    for p in range(len(family.bases)):
        for q in range(p + 1, len(family.bases)):
            dev = np.max(np.abs(overlaps(family.bases[p], family.bases[q]) - 1.0 / n))
            worst = max(worst, float(dev))
    return worst


def ray_match(a: np.ndarray, b: np.ndarray) -> tuple[list[int], float]:
    """Greedily pair the columns of ``a`` with columns of ``b``.

    Pairs are taken in order of decreasing squared overlap.  Returns the
    permutation ``perm`` (column ``r`` of ``a`` is matched to column
    ``perm[r]`` of ``b``) and the largest deficit ``1 - |<a_r|b_perm[r]>|^2``.
    """
    ov = overlaps(np.asarray(a), np.asarray(b))
    m = ov.shape[0]
    perm = [-1] * m
    used_r: set[int] = set()
    used_c: set[int] = set()
    for flat in np.argsort(-ov, axis=None, kind="stable"):
        r, c = divmod(int(flat), ov.shape[1])
        if r in used_r or c in used_c:
            continue
        perm[r] = c
        used_r.add(r)
        used_c.add(c)
        if len(used_r) == m:
            break
    deficit = max(1.0 - float(ov[r, perm[r]]) for r in range(m))
    return perm, max(deficit, 0.0)


def ray_deficit(a: np.ndarray, b: np.ndarray) -> float:
    return ray_match(a, b)[1]


def same_rays(a: np.ndarray, b: np.ndarray, tol: float = TOL.ray) -> bool:
    """True if the columns of ``a`` and ``b`` define the same unordered set
    of rays (vectors up to phase)."""
    if np.shape(a) != np.shape(b):
        return False
    return ray_deficit(a, b) <= tol


def twist_residual(family: MubFamily, t: float, target: int) -> float:
    """Ray deficit between ``exp(-i S_z^2 t)`` applied to basis 2 and basis
    ``target`` (bases counted from 1); spin projections run ``j .. -j``."""
    n = family.dim
    m = (n - 1) / 2 - np.arange(n)
    twisted = np.exp(-1j * m**2 * t)[:, None] * family.bases[1]
    return ray_deficit(twisted, family.bases[target - 1])


def twist_map_check(family: MubFamily, t: float | None = None,
                    tol: float = TOL.ray) -> tuple[bool, float]:
    """One-axis twisting between the spin-1 bases.

    With ``t=None`` both known maps are checked (basis 2 to basis 3 at
    ``2 pi / 3`` and to basis 4 at ``4 pi / 3``).  For a given ``t`` the
    twisted basis is compared against every basis of the family and the
    best residual is reported.
    """
    if family.dim != 3:
        raise UnsupportedDimension("one-axis twisting check is defined for n=3 only")
    if t is None:
        residual = max(twist_residual(family, tt, target) for target, tt in TWIST_TIMES.items())
    else:
        residual = min(twist_residual(family, t, target) for target in range(1, len(family) + 1))
    return residual <= tol, residual
