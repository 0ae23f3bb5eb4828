"""
Where do faulty agents end up?
==============================

On a grid made only of pass junctions, an agent that flips direction ``m - 1``
times can reach many exits. Counting those paths exactly gives the shape of
the noise; we compare it with a million simulated agents.
"""

import numpy as np

from subsetnet import simulate_simplistic
from subsetnet.analytics import brute_force_path_distribution, noise_distribution, path_counts

##############################################################################
# Path counts for a short grid: ``A[m][i]`` paths with ``m`` turns ending at ``i``.
table = path_counts(6)
for m in range(1, 7):
    print(f"m={m}:", table.A[m])
print("total paths:", table.total(), "= 2**6")

##############################################################################
# The recursion agrees with brute-force enumeration of all 2**18 paths.
_, oracle = brute_force_path_distribution(18, 0.15)
exact = noise_distribution(18, 0.15)
print("max |recursion - enumeration| =", np.abs(exact.p_non - oracle.p_non).max())

##############################################################################
# Small errors give a flat profile, larger ones pile up in the middle.
for p in (0.01, 0.15):
    hist = simulate_simplistic(18, p, 1_000_000, seed=0)
    sim = hist.faulty_distribution()
    ana = noise_distribution(18, p).p_non
    print(f"\np = {p}")
    for i in (1, 5, 9, 13, 17):
        print(f"  exit {i:2d}: analytic {ana[i]:.4f}  simulated {sim[i]:.4f}")
