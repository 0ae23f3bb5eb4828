"""Agent planning: how many agents a (possibly faulty) grid needs."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..grid import SubsetInstance
from ..simulator import ErrorModel
from .noise import (
    NoiseDistribution,
    effective_error_prob,
    noise_distribution,
    noise_stats,
    required_per_exit,
)
from .sizing import min_path_prob, n_min_ideal, n_min_nonideal, p_correct_traversal

MAX_PLAN_ITERATIONS = 100
#: Minimum ``p * N`` for the Gaussian approximation to be trusted.
GAUSSIAN_VALIDITY = 5.0
#: Split-junction flip probability on wrong paths, averaged over incoming directions.
P_SPLIT_FLIP = 0.5

WARN_LOW_PC = "p_c <= 0.5: approximation regime exceeded"
WARN_GAUSSIAN = "p_min_path * N_min < 5: Gaussian approximation unreliable"


@dataclass(frozen=True)
class ConfidenceParams:
    ell: float = 3.0
    n_floor: int = 1

    def __post_init__(self):
        if not self.ell > 0:
            raise ValueError("ell must be > 0")
        if self.n_floor < 1:
            raise ValueError("n_floor must be >= 1")


@dataclass
class AgentPlan:
    n_i: int
    N_min: int
    N_min_non: int
    N_FP: int
    p_c: float
    p_eff: float
    p_min_path: float
    i_max: int
    p_non_max: float | None
    noise_mean: float
    noise_sigma: float
    required_n_i: int
    iterations: int
    converged: bool = True
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class PlanConvergenceError(RuntimeError):
    def __init__(self, message: str, last: AgentPlan):
        super().__init__(message)
        self.last = last


def _noise_for(instance: SubsetInstance, p_eff: float) -> NoiseDistribution | None:
    Z = instance.n_tot
    if Z < 2 or p_eff <= 0.0:
        return None
    return noise_distribution(Z, p_eff, p_sj=P_SPLIT_FLIP)


def _context(instance: SubsetInstance, model: ErrorModel):
    ratios = model.ratios_for(instance.s)
    p_min = min_path_prob(ratios)
    p_c = p_correct_traversal(model.p_pass_error, instance.n_pass)
    p_eff = effective_error_prob(model.p_pass_error, P_SPLIT_FLIP, instance.s, instance.n_tot)
    return p_min, p_c, p_eff


def evaluate_chain(
    instance: SubsetInstance,
    model: ErrorModel,
    n_i: int,
    params: ConfidenceParams = ConfidenceParams(),
    dist: NoiseDistribution | None = None,
    _ctx=None,
) -> AgentPlan:
    """One pass of the sizing chain at a pinned per-exit floor ``n_i``.

    ``N_min`` from the least likely path, ``N_min_non`` so that ``N_min``
    agents are flip-free, and the noise that the remaining ``N_FP`` agents put
    on the central exit.
    """
    p_min, p_c, p_eff = _ctx or _context(instance, model)
    if dist is None:
        dist = _noise_for(instance, p_eff)
    N_min = n_min_ideal(p_min, n_i, params.ell)
    N_non = n_min_nonideal(N_min, p_c, params.ell)
    N_FP = N_non - N_min
    if dist is None or N_FP == 0:
        mean = sigma = 0.0
        required = 1
    else:
        mean, sigma = noise_stats(dist, N_FP)
        required = required_per_exit(dist, N_FP, params.ell)
    warnings = []
    if p_c <= 0.5:
        warnings.append(WARN_LOW_PC)
    if p_min * N_min < GAUSSIAN_VALIDITY:
        warnings.append(WARN_GAUSSIAN)
    return AgentPlan(
        n_i=int(n_i),
        N_min=N_min,
        N_min_non=N_non,
        N_FP=N_FP,
        p_c=p_c,
        p_eff=p_eff,
        p_min_path=p_min,
        i_max=dist.i_max if dist is not None else instance.n_tot // 2,
        p_non_max=dist.p_max if dist is not None else None,
        noise_mean=mean,
        noise_sigma=sigma,
        required_n_i=required,
        iterations=0,
        warnings=warnings,
    )


def plan_agents(
    instance: SubsetInstance,
    model: ErrorModel = ErrorModel(),
    params: ConfidenceParams = ConfidenceParams(),
    max_iterations: int = MAX_PLAN_ITERATIONS,
) -> AgentPlan:
    """Raise the per-exit floor until the correct signal clears the noise.

    Starting from ``n_i = n_floor``, the sizing chain is evaluated and
    ``n_i`` is replaced by the floor that the resulting faulty agents demand,
    until that floor stops growing. Raises :class:`PlanConvergenceError`
    (carrying the last iterate) if it is still growing after
    ``max_iterations`` rounds.
    """
    ctx = _context(instance, model)
    dist = _noise_for(instance, ctx[2])
    n = params.n_floor
    plan = None
    for it in range(1, max_iterations + 1):
        try:
            plan = evaluate_chain(instance, model, n, params, dist=dist, _ctx=ctx)
        except OverflowError:
            break
        plan.iterations = it
        if plan.required_n_i <= n:
            return plan
        n = plan.required_n_i
    if plan is None:
        raise PlanConvergenceError("agent count overflowed on the first iteration", None)
    plan.converged = False
    raise PlanConvergenceError(
        f"agent plan did not converge within {max_iterations} iterations (n_i={n})", plan
    )
