"""Closed-form and recursive statistics of the junction-grid computer."""

from .noise import (
    NoErrorPathsError,
    NoiseDistribution,
    effective_error_prob,
    flat_noise_distribution,
    noise_distribution,
    noise_stats,
    required_per_exit,
)
from .exact import exact_exit_distribution
from .paths import (
    PathCountOverflowError,
    PathCountTable,
    brute_force_path_distribution,
    g,
    path_counts,
)
from .planning import (
    AgentPlan,
    ConfidenceParams,
    PlanConvergenceError,
    evaluate_chain,
    plan_agents,
)
from .sizing import (
    P_SINGLE_SUCCESS,
    ci_bounds,
    min_path_prob,
    multinomial_pmf,
    n_min_ideal,
    n_min_nonideal,
    p_correct_traversal,
    success_prob,
)

__all__ = [
    "AgentPlan",
    "ConfidenceParams",
    "NoErrorPathsError",
    "NoiseDistribution",
    "P_SINGLE_SUCCESS",
    "PathCountOverflowError",
    "PathCountTable",
    "PlanConvergenceError",
    "brute_force_path_distribution",
    "ci_bounds",
    "effective_error_prob",
    "evaluate_chain",
    "exact_exit_distribution",
    "flat_noise_distribution",
    "g",
    "min_path_prob",
    "multinomial_pmf",
    "n_min_ideal",
    "n_min_nonideal",
    "noise_distribution",
    "noise_stats",
    "p_correct_traversal",
    "path_counts",
    "plan_agents",
    "required_per_exit",
    "success_prob",
]
