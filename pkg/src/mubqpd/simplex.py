"""Dense tableau simplex method with Bland's anti-cycling rule.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` for ``b >= 0``, i.e. problems
where the origin is feasible and no phase-one step is needed.  Intended for
the small, highly degenerate problems met when probing polytopes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LpUnbounded, NoConvergence
from .numerics import TOL


@dataclass
class LpResult:
    x: np.ndarray
    value: float
    iterations: int
    basis: np.ndarray


def simplex_max(c, a_ub, b_ub, tol: float = TOL.lp, max_iter: int = 50_000) -> LpResult:
    c = np.asarray(c, dtype=float)
    a = np.asarray(a_ub, dtype=float)
    b = np.asarray(b_ub, dtype=float)
    m, nvar = a.shape
    if c.shape != (nvar,) or b.shape != (m,):
        raise ValueError("inconsistent LP dimensions")
    if np.any(b < 0):
        raise ValueError("simplex_max needs b >= 0 (origin feasible)")

    # tableau rows: [A | I | b]; objective row holds reduced costs c_j - z_j
    tab = np.zeros((m + 1, nvar + m + 1))
    tab[:m, :nvar] = a
    tab[:m, nvar:nvar + m] = np.eye(m)
    tab[:m, -1] = b
    tab[m, :nvar] = c
    basis = np.arange(nvar, nvar + m)

    for it in range(max_iter):
        reduced = tab[m, :-1]
        candidates = np.flatnonzero(reduced > tol)
        if candidates.size == 0:
            break
        enter = int(candidates[0])  # Bland: lowest index
        col = tab[:m, enter]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            raise LpUnbounded(f"objective unbounded along variable {enter}")
        ratios = tab[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol * max(1.0, abs(best))]
        leave = int(ties[np.argmin(basis[ties])])  # Bland: lowest basic index
        tab[leave] /= tab[leave, enter]
        others = np.arange(m + 1) != leave
        tab[others] -= np.outer(tab[others, enter], tab[leave])
        basis[leave] = enter
    else:
        raise NoConvergence(f"simplex did not terminate in {max_iter} pivots")

    # recompute the basic solution from the original data to shed pivot round-off
    full = np.hstack([a, np.eye(m)])
    xb = np.linalg.solve(full[:, basis], b)
    z = np.zeros(nvar + m)
    z[basis] = xb
    x = z[:nvar]
    return LpResult(x, float(c @ x), it, basis.copy())
