"""
Ideal grid: how many agents are enough?
=======================================

With perfect junctions every subset path is equally likely, so each correct
exit is one cell of a multinomial with probability ``1/2**s``. Asking the
3-sigma lower bound of every cell to hold at least one agent fixes the
number of agents.
"""

import numpy as np

from subsetnet import ErrorModel, SubsetInstance, build_grid, correct_exits, simulate
from subsetnet.analytics import ci_bounds, n_min_ideal, success_prob

##############################################################################
# The grid for {2, 3, 7}: one split row at the top of each element's block.
inst = SubsetInstance([2, 3, 7])
grid = build_grid(inst)
print("Z =", grid.Z, "split rows:", grid.split_rows)
print("correct exits:", correct_exits(inst))

##############################################################################
# Agents needed for s = 3..6, and the chance that all 3-sigma intervals hold.
for s in range(3, 7):
    print(f"s={s}  N_min={n_min_ideal(2.0**-s):4d}  p_success={success_prob(0.99, 2**s):.2f}")

##############################################################################
# One seeded run with N_min agents. Every count should sit inside the band.
N = n_min_ideal(1 / 8)
lo, hi = ci_bounds(N, 1 / 8)
hist = simulate(grid, ErrorModel(), N, seed=3)
for i in correct_exits(inst):
    print(f"exit {i:2d}: {hist.counts[i]:3d} agents   band [{lo:.1f}, {hi:.1f}]")
print("agents on non-solution exits:", int(hist.counts[np.setdiff1d(grid.exits, correct_exits(inst))].sum()))
