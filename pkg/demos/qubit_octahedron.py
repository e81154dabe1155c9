# Qubit: the quasiprobability table over the three Pauli bases, and the
# octahedron of states on which it stays non-negative.

import numpy as np

from mubqpd import classify, paper_fixture, qpd_table
from mubqpd.polytope import enumerate_faces, octahedron_check, vertices

basis = paper_fixture(2)  # sigma_x, sigma_y, sigma_z

# %% a state on the z axis: half of the eight outcome triples get weight 1/4
theta = np.array([0.0, 0.0, 1.0])
table = qpd_table(theta, basis)
print("table for |0><0|:", np.round(table.flat, 4))

# %% l1 norm above one means some outcome triple is negative
for theta in ([0.2, 0.3, 0.4], [0.6, 0.6, 0.6], [1 / 3, 1 / 3, 1 / 3]):
    c = classify(theta, basis)
    print(f"theta={theta}  |theta|_1={np.abs(theta).sum():.3f}  min p={c.min_value:+.4f}  {c.status}")

# %% vertices are the six Pauli eigenstates
print("vertices:\n", vertices(basis).round(3))
report = enumerate_faces(basis)
print("vertices/facets/edges:", report.vertex_count, report.facet_count, report.edge_count_geometric)

# %% Monte-Carlo comparison with the l1 ball
print("disagreements over 1e5 random points:", octahedron_check(100_000, seed=0))
