"""
Solving on a faulty grid
========================

Plan the number of agents, run them, and read solutions off the histogram by
comparing every exit against a noise band and a signal band.
"""

from subsetnet import ErrorModel, SubsetInstance, build_grid, simulate_traced
from subsetnet.analytics import evaluate_chain, noise_distribution, plan_agents
from subsetnet.classifier import classify, compute_bands, verify

inst = SubsetInstance([5, 6, 7])
grid = build_grid(inst)

##############################################################################
# Low error rate: the planner converges and the decoder is clean.
model = ErrorModel(0.01)
plan = plan_agents(inst, model)
print(f"n_i={plan.n_i} N_min={plan.N_min} N_min_non={plan.N_min_non} p_c={plan.p_c:.3f}")
dist = noise_distribution(inst.n_tot, plan.p_eff)
bands = compute_bands(inst, plan, dist, plan.N_min_non)
report = classify(simulate_traced(grid, model, plan.N_min_non, seed=1), bands)
print("solutions:", report.solutions(), verify(inst, report)["exact_match"])

##############################################################################
# At p = 0.1 only one in five agents stays on a valid path. Pinning the
# per-exit floor at 104 gives about 5765 agents; bands crowd together and
# some exits come out ambiguous.
model = ErrorModel(0.1)
plan = evaluate_chain(inst, model, 104)
print(f"\nN_min_non={plan.N_min_non} warnings={plan.warnings}")
dist = noise_distribution(inst.n_tot, plan.p_eff)
bands = compute_bands(inst, plan, dist, plan.N_min_non)
report = classify(simulate_traced(grid, model, plan.N_min_non, seed=1), bands)
print("solutions:", report.solutions(), "ambiguous:", report.ambiguous())
print(report.to_csv())
