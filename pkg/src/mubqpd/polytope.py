"""Geometry of the region where the QPD is non-negative.

The region is ``{theta : 1 + sum_i Z[k_i] . theta_i >= 0 for all k}``.  Each
inequality (facet candidate) is labelled by an outcome tuple ``k`` and has
normal vector ``(Z[k_1], ..., Z[k_{n+1}])``.  Because the constraint
separates over blocks, the tightest one has margin
``1 + sum_i min_c Z[c] . theta_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from .csco import CscoBasis, build_csco
from .errors import DimMismatch, LpUnbounded, UnsupportedDimension
from .numerics import TOL
from .qpd import boundary_status
from .simplex import simplex_max
from .state import as_bloch, make_rng


@dataclass
class Membership:
    status: str
    margin: float


def margins(thetas, alphabet) -> np.ndarray:
    """Vectorised margin for an array of theta vectors (last axis)."""
    z = np.asarray(alphabet, dtype=float)
    n = z.shape[0]
    th = np.asarray(thetas, dtype=float)
    blocks = th.reshape(th.shape[:-1] + (n + 1, n - 1))
    scores = blocks @ z.T
    return 1.0 + scores.min(axis=-1).sum(axis=-1)


def membership(s, basis: CscoBasis, band: float = TOL.boundary) -> Membership:
    n = basis.dim
    s = as_bloch(s, n)
    margin = float(margins(s.theta, basis.alphabet))
    return Membership(boundary_status(margin, band), margin)


def vertices(basis: CscoBasis) -> np.ndarray:
    """The ``n (n + 1)`` vertices, one row per vertex.

    Row ``i * n + c`` has block ``i`` equal to ``Z[c]`` and all other blocks
    zero (sets and outcomes counted from 0).
    """
    n = basis.dim
    z = basis.alphabet
    out = np.zeros((n + 1, n, n + 1, n - 1))
    for i in range(n + 1):
        out[i, :, i, :] = z
    return out.reshape(n * (n + 1), n * n - 1)


def vertex_basis_labels(n: int) -> np.ndarray:
    return np.repeat(np.arange(n + 1), n)


@dataclass
class VertexGeometry:
    norms: np.ndarray
    same_basis_cos: np.ndarray
    cross_basis_dot: np.ndarray
    expected_norm: float
    expected_same_cos: float

    @property
    def norm_deviation(self) -> float:
        return float(np.max(np.abs(self.norms - self.expected_norm)))

    @property
    def same_cos_deviation(self) -> float:
        return float(np.max(np.abs(self.same_basis_cos - self.expected_same_cos)))

    @property
    def cross_dot_deviation(self) -> float:
        return float(np.max(np.abs(self.cross_basis_dot), initial=0.0))


def vertex_geometry(basis: CscoBasis) -> VertexGeometry:
    """Norms of the vertices and cosines between them, grouped by whether the
    two vertices come from the same basis."""
    n = basis.dim
    v = vertices(basis)
    norms = np.linalg.norm(v, axis=1)
    gram = v @ v.T
    cos = gram / np.outer(norms, norms)
    labels = vertex_basis_labels(n)
    iu = np.triu_indices(len(v), k=1)
    same = labels[iu[0]] == labels[iu[1]]
    return VertexGeometry(
        norms=norms,
        same_basis_cos=cos[iu][same],
        cross_basis_dot=gram[iu][~same],
        expected_norm=float(np.sqrt(n - 1)),
        expected_same_cos=-1.0 / (n - 1),
    )


def facet_tuples(n: int) -> np.ndarray:
    """All outcome tuples in k1-major order, shape ``(n^(n+1), n + 1)``."""
    return np.array(list(itertools.product(range(n), repeat=n + 1)), dtype=int)


def facet_normals(basis: CscoBasis) -> np.ndarray:
    """Row ``f`` is ``(Z[k_1], ..., Z[k_{n+1}])`` for tuple ``f``; the facet
    inequality reads ``1 + normal . theta >= 0``."""
    tuples = facet_tuples(basis.dim)
    return basis.alphabet[tuples].reshape(len(tuples), -1)


@dataclass
class PolytopeReport:
    dim: int
    vertex_count: int
    facet_count: int
    edge_count_geometric: int
    edge_count_crossbasis: int
    edge_count_samebasis: int
    facet_rank_min: int
    facet_rank_max: int
    tight_vertices_per_facet: list[int]
    vertex_norm_deviation: float
    same_basis_cos: float
    same_basis_cos_deviation: float
    cross_basis_dot_deviation: float
    discrepancies: list[str] = field(default_factory=list)

    @property
    def paper_vertices(self) -> int:
        return self.dim * (self.dim + 1)

    @property
    def paper_facets(self) -> int:
        return self.dim ** (self.dim + 1)

    @property
    def paper_edges(self) -> int:
        return self.dim**3 * (self.dim + 1) // 2

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "dim": self.dim,
            "vertices": self.vertex_count,
            "facets": self.facet_count,
            "edges_geometric": self.edge_count_geometric,
            "edges_crossbasis": self.edge_count_crossbasis,
            "edges_samebasis": self.edge_count_samebasis,
            "paper_vertices": self.paper_vertices,
            "paper_facets": self.paper_facets,
            "paper_edges": self.paper_edges,
            "facet_rank_min": self.facet_rank_min,
            "facet_rank_max": self.facet_rank_max,
            "tight_vertices_per_facet": d["tight_vertices_per_facet"],
            "vertex_norm_deviation": self.vertex_norm_deviation,
            "same_basis_cos": self.same_basis_cos,
            "same_basis_cos_deviation": self.same_basis_cos_deviation,
            "cross_basis_dot_deviation": self.cross_basis_dot_deviation,
            "discrepancies": list(self.discrepancies),
        }


def incidence(basis: CscoBasis, tol: float = TOL.validation) -> np.ndarray:
    """Boolean matrix ``tight[v, f]``: vertex ``v`` lies on inequality ``f``."""
    slack = 1.0 + vertices(basis) @ facet_normals(basis).T
    return np.abs(slack) <= tol


def enumerate_faces(basis: CscoBasis, tol: float = TOL.validation) -> PolytopeReport:
    """Count facets and edges from the vertex-facet incidence.

    An inequality is facet-defining when its tight vertices affinely span a
    hyperplane (rank ``n^2 - 2``).  A vertex pair is a geometric edge when
    the vertices lying on every facet through both are exactly that pair.
    The cross-basis count only considers pairs from different bases.
    """
    n = basis.dim
    if n not in (2, 3, 4):
        raise UnsupportedDimension(f"face enumeration is limited to n in (2, 3, 4), got {n}")
    verts = vertices(basis)
    labels = vertex_basis_labels(n)
    tight = incidence(basis, tol)
    nv, nf = tight.shape
    d = n * n - 1

    ranks = []
    facet_sets = set()
    for f in range(nf):
        idx = np.flatnonzero(tight[:, f])
        if idx.size == 0:
            ranks.append(-1)
            continue
        diffs = verts[idx[1:]] - verts[idx[0]]
        r = int(np.linalg.matrix_rank(diffs, tol=tol)) if len(diffs) else 0
        ranks.append(r)
        if r == d - 1:
            facet_sets.add(tuple(idx))
    facet_count = len(facet_sets)

    geometric = cross = same = 0
    for u, v in itertools.combinations(range(nv), 2):
        if labels[u] != labels[v]:
            cross += 1
        common = tight[u] & tight[v]
        if not common.any():
            continue
        on_all = np.flatnonzero(tight[:, common].all(axis=1))
        if len(on_all) == 2:
            geometric += 1
            if labels[u] == labels[v]:
                same += 1

    geo = vertex_geometry(basis)
    report = PolytopeReport(
        dim=n,
        vertex_count=nv,
        facet_count=facet_count,
        edge_count_geometric=geometric,
        edge_count_crossbasis=cross,
        edge_count_samebasis=same,
        facet_rank_min=min(ranks),
        facet_rank_max=max(ranks),
        tight_vertices_per_facet=sorted({int(c) for c in tight.sum(axis=0)}),
        vertex_norm_deviation=geo.norm_deviation,
        same_basis_cos=geo.expected_same_cos,
        same_basis_cos_deviation=geo.same_cos_deviation,
        cross_basis_dot_deviation=geo.cross_dot_deviation,
    )
    if report.vertex_count != report.paper_vertices:
        report.discrepancies.append(
            f"vertex count {report.vertex_count} differs from n(n+1) = {report.paper_vertices}")
    if report.facet_count != report.paper_facets:
        report.discrepancies.append(
            f"facet count {report.facet_count} differs from n^(n+1) = {report.paper_facets}")
    if report.edge_count_geometric != report.paper_edges:
        report.discrepancies.append(
            f"geometric edge count {geometric} differs from n^3(n+1)/2 = {report.paper_edges}: "
            f"{same} same-basis vertex pairs are edges (within one commuting set the vertices "
            f"form a regular simplex whose edges survive as faces of the polytope), and "
            f"{geometric - same} cross-basis pairs are edges")
    if cross != report.paper_edges:
        report.discrepancies.append(
            f"cross-basis pair count {cross} differs from n^3(n+1)/2 = {report.paper_edges}")
    return report


def support_lp(basis: CscoBasis, c, tol: float = TOL.lp) -> float:
    """``max c . theta`` over the polytope by the dense simplex method.

    ``theta = u - v`` with ``u, v >= 0``; the box ``|theta_j| <= sqrt(n - 1)``
    (valid since the polytope sits inside the Bloch ball) keeps every
    intermediate problem bounded.
    """
    n = basis.dim
    d = n * n - 1
    c = np.asarray(c, dtype=float)
    if c.shape != (d,):
        raise DimMismatch(f"direction must have {d} entries")
    normals = facet_normals(basis)
    r = np.sqrt(n - 1)
    eye = np.eye(d)
    # rows: -normal.theta <= 1 ; theta <= r ; -theta <= r
    a_theta = np.vstack([-normals, eye, -eye])
    b = np.concatenate([np.ones(len(normals)), np.full(2 * d, r)])
    a = np.hstack([a_theta, -a_theta])
    res = simplex_max(np.concatenate([c, -c]), a, b, tol=tol)
    return res.value


def support_probe(basis: CscoBasis, directions: int = 500, seed=0) -> float:
    """Largest gap between the LP support function and the best vertex over
    random unit directions; a gap near zero certifies that the inequality
    region is the convex hull of :func:`vertices` along those directions."""
    n = basis.dim
    if n not in (2, 3):
        raise UnsupportedDimension("support probing is limited to n in (2, 3)")
    verts = vertices(basis)
    rng = make_rng(seed)
    worst = 0.0
    for _ in range(directions):
        c = rng.standard_normal(n * n - 1)
        c /= np.linalg.norm(c)
        try:
            lp = support_lp(basis, c)
        except LpUnbounded as exc:  # pragma: no cover - region is bounded
            raise LpUnbounded(f"support LP unbounded; construction is broken: {exc}") from exc
        worst = max(worst, abs(lp - float(np.max(verts @ c))))
    return worst


def octahedron_check(samples: int = 100_000, seed=0, basis: CscoBasis | None = None,
                     band: float = TOL.boundary) -> int:
    """Count points of ``[-1, 1]^3`` where facet membership and the l1 test
    ``|theta|_1 <= 1`` disagree (points within ``band`` of either boundary
    are skipped)."""
    basis = build_csco(2) if basis is None else basis
    if basis.dim != 2:
        raise DimMismatch("octahedron check needs an n=2 basis")
    pts = make_rng(seed).uniform(-1.0, 1.0, size=(samples, 3))
    marg = margins(pts, basis.alphabet)
    l1 = np.abs(pts).sum(axis=1)
    clear = (np.abs(marg) > band) & (np.abs(l1 - 1.0) > band)
    return int(np.sum(clear & ((marg >= 0) != (l1 <= 1.0))))
