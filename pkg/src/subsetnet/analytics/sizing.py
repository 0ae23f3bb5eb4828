"""Gaussian confidence intervals and agent-count sizing."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.special import gammaln

#: Per-outcome coverage of a 3-sigma interval, as used for full-run success.
P_SINGLE_SUCCESS = 0.99


def multinomial_pmf(counts: Sequence[int], probs: Sequence[float]) -> float:
    """Probability of observing ``counts`` in ``sum(counts)`` multinomial trials.

    Evaluated in log space so that a few thousand trials do not overflow the
    factorials.
    """
    x = np.asarray(counts)
    p = np.asarray(probs, dtype=float)
    if x.shape != p.shape or x.ndim != 1:
        raise ValueError("counts and probs must be 1-d and of equal length")
    if np.any(x < 0) or np.any(x != np.round(x)):
        raise ValueError("counts must be non-negative integers")
    if np.any(p < 0) or np.any(p > 1) or abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("probs must be a probability vector")
    x = x.astype(np.int64)
    if np.any((p == 0) & (x > 0)):
        return 0.0
    nz = x > 0
    logp = gammaln(x.sum() + 1) - gammaln(x + 1).sum() + np.sum(x[nz] * np.log(p[nz]))
    return float(np.exp(logp))


def _check_open_prob(p: float, name: str = "p") -> None:
    if not 0.0 < p < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {p}")


def ci_bounds(N: float, p: float, ell: float = 3.0, clamp: bool = False) -> tuple[float, float]:
    """``N p -/+ ell * sqrt(N p q)``, optionally clamped at zero from below."""
    _check_open_prob(p)
    if N < 1:
        raise ValueError("N must be >= 1")
    mean = N * p
    half = ell * math.sqrt(N * p * (1.0 - p))
    lo = mean - half
    if clamp:
        lo = max(lo, 0.0)
    return lo, mean + half


def _solve_lower_bound(p: float, target: float, ell: float) -> float:
    # positive root of  N p - ell sqrt(N p q) = target  in N
    q = 1.0 - p
    return (ell * ell * q + 2.0 * target + ell * math.sqrt(ell * ell * q * q + 4.0 * q * target)) / (2.0 * p)


def _ceil_root(p: float, target: float, ell: float) -> int:
    N = max(1, math.ceil(_solve_lower_bound(p, target, ell) - 1e-9))
    q = 1.0 - p

    def ok(n):
        return n * p - ell * math.sqrt(n * p * q) >= target - 1e-9

    # float noise can put the ceiling one off an integer root
    if N > 1 and ok(N - 1):
        N -= 1
    elif not ok(N):
        N += 1
    return N


def n_min_ideal(p: float, n_floor: float = 1, ell: float = 3.0) -> int:
    """Smallest N whose ``ell``-sigma lower bound on a path of probability
    ``p`` still leaves ``n_floor`` agents on it.

    For ``ell = 3``: ``N = 3/(2p) (3q + 2n/3 + sqrt(9q^2 + 4qn))`` rounded up.
    """
    _check_open_prob(p)
    if n_floor < 1:
        raise ValueError("n_floor must be >= 1")
    if ell < 0:
        raise ValueError("ell must be non-negative")
    return _ceil_root(p, n_floor, ell)


def n_min_nonideal(N_min: int, p_c: float, ell: float = 3.0) -> int:
    """Agents needed so that ``N_min`` of them traverse the grid flip-free.

    Binomial analogue of :func:`n_min_ideal` with ``p -> p_c`` and
    ``n -> N_min``; the radicand is ``ell^2 q_c^2 + 4 q_c N_min``.
    """
    if not 0.0 < p_c <= 1.0:
        raise ValueError(f"p_c must lie in (0, 1], got {p_c}")
    if p_c == 1.0:
        return int(N_min)
    return _ceil_root(p_c, N_min, ell)


def success_prob(p_single: float = P_SINGLE_SUCCESS, N_sol: int = 1) -> float:
    if not 0.0 <= p_single <= 1.0:
        raise ValueError("p_single must lie in [0, 1]")
    return p_single**N_sol


def p_correct_traversal(p_pj: float, n_pass_junctions: int) -> float:
    """Probability that no pass junction flips the agent."""
    if not 0.0 <= p_pj < 1.0:
        raise ValueError(f"p_pj must lie in [0, 1), got {p_pj}")
    if n_pass_junctions < 0:
        raise ValueError("n_pass_junctions must be >= 0")
    return (1.0 - p_pj) ** n_pass_junctions


def min_path_prob(split_ratios: Sequence[float]) -> float:
    """Probability of the least likely include/exclude path."""
    prob = 1.0
    for b in split_ratios:
        _check_open_prob(b, "split ratio")
        prob *= min(b, 1.0 - b)
    return prob
