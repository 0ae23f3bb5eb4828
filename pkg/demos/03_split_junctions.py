"""
Split junctions on wrong paths
==============================

Once an agent is off its path, every split junction re-draws its direction
and behaves like a very leaky pass junction. Folding the split rows into an
effective pass-error probability reshapes the noise without changing how
many agents go astray.
"""

import numpy as np

from subsetnet import ErrorModel, SubsetInstance, build_grid, simulate_traced
from subsetnet.analytics import effective_error_prob, exact_exit_distribution, noise_distribution

inst = SubsetInstance([5, 6, 7])
grid = build_grid(inst)

for p in (0.01, 0.15):
    p_eff = effective_error_prob(p, 0.5, inst.s, inst.n_tot)
    raw = noise_distribution(inst.n_tot, p).p_non
    eff = noise_distribution(inst.n_tot, p_eff).p_non
    _, faulty = exact_exit_distribution(grid, ErrorModel(p))
    faulty[0] = faulty[-1] = 0
    truth = faulty / faulty.sum()
    sim = simulate_traced(grid, ErrorModel(p), 1_000_000, seed=1).faulty_distribution()
    print(f"p_PJ = {p}, p_eff = {p_eff:.4f}")
    print(f"  max |raw - exact|       = {np.abs(raw - truth).max():.4f}")
    print(f"  max |effective - exact| = {np.abs(eff - truth).max():.4f}")
    print(f"  max |simulated - exact| = {np.abs(sim - truth).max():.4f}")
