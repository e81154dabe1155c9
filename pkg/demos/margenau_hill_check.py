# Compare the Margenau-Hill characteristic function with the Fourier
# transform of the closed-form table.  For the qubit they agree; for the
# qutrit the pairwise distributions also depend on the Bloch components of
# the sets that were not measured.

import numpy as np

from mubqpd import build_csco, density_from_bloch, mh_fourier_sweep, random_state
from mubqpd.qpd import marginal_closed_form, mh_pair_distribution
from mubqpd.state import bloch_from_density

for n, subset in ((2, None), (3, [2]), (3, [1, 2]), (3, None)):
    sweep = mh_fourier_sweep(build_csco(n), subset, samples=30, seed=0)
    print(f"n={n} subset={sweep.subset}: max deviation {sweep.max_deviation:.2e}")

# %% isolate the effect: zero the spectator blocks and the pair agrees again
basis = build_csco(3)
theta = bloch_from_density(random_state(3, "mixed", seed=4), basis).theta
for label, th in (("full state", theta), ("spectators zeroed", np.r_[theta[:4], np.zeros(4)])):
    rho = np.asarray(density_from_bloch(th, basis))
    diff = mh_pair_distribution(rho, basis, 1, 2) - marginal_closed_form(th, basis, [1, 2])
    print(f"{label:>18}: max |MH pair - closed form| = {np.abs(diff).max():.2e}")
