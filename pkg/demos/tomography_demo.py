# Simulated qutrit tomography: measure each of the four MUBs, invert
# linearly, and compare the error with the reported standard errors.

import numpy as np

from mubqpd import build_csco, estimate_bloch, random_state, simulate_counts
from mubqpd.state import bloch_from_density

basis = build_csco(3)
rho = random_state(3, "mixed", seed=1)
theta = bloch_from_density(rho, basis).theta

for shots in (100, 1_000, 10_000, 100_000):
    est = estimate_bloch(simulate_counts(rho, basis, shots, seed=shots), basis)
    err = np.linalg.norm(est.state.theta - theta)
    print(f"shots={shots:>7}  |error|={err:.4f}  aggregate stderr={est.aggregate_stderr:.4f}")

# %% the error shrinks like 1/sqrt(shots)
shots = np.logspace(2, 5, 7).astype(int)
errs = [np.linalg.norm(estimate_bloch(simulate_counts(rho, basis, int(s), seed=(7, k)), basis).state.theta - theta)
        for k, s in enumerate(shots)]
slope = np.polyfit(np.log(shots), np.log(errs), 1)[0]
print(f"log-log slope of error vs shots: {slope:.2f}")
