# Qutrit: the operator basis built from spherical tensors and MUBs, and the
# 8-dimensional polytope on which the quasiprobability is non-negative.

import numpy as np

from mubqpd import (
    bloch_from_density,
    build_csco,
    build_mub,
    enumerate_faces,
    membership,
    random_state,
    support_probe,
    validate_csco,
)
from mubqpd.polytope import vertex_geometry

basis = build_csco(3)
family = build_mub(3)
print("validation passed:", validate_csco(basis, family).passed)
print("outcome alphabet (rows are eigenvalue pairs):\n", basis.alphabet.round(4))

# %% vertex geometry: norm sqrt(2), 120 degrees within a basis, orthogonal across
geo = vertex_geometry(basis)
print("vertex norms:", np.unique(geo.norms.round(12)))
print("same-basis cosine:", np.unique(geo.same_basis_cos.round(12)))

# %% faces
report = enumerate_faces(basis)
for key, value in report.to_dict().items():
    if key.startswith(("vertices", "facets", "edges")):
        print(f"{key:>18}: {value}")
for note in report.discrepancies:
    print("note:", note)

# %% how many random mixed states have a non-negative table?
states = [random_state(3, "mixed", seed=k) for k in range(5_000)]
inside = np.mean([membership(bloch_from_density(r, basis), basis).margin >= 0 for r in states])
print(f"Hilbert-Schmidt random states with non-negative table: {inside:.3f}")

# %% the polytope equals the hull of its vertices along random directions
print("largest support gap:", support_probe(basis, 200, seed=1))
