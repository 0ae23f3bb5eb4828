"""Distribution of error-induced exits and the noise it puts on each exit."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .paths import PathCountTable, g, path_counts


class NoErrorPathsError(ValueError):
    """No error path exists (zero pass error, or no interior exit)."""


@dataclass(frozen=True)
class NoiseDistribution:
    """Probability that a faulty agent leaves through exit ``i``.

    ``p_non`` has length ``Z + 1`` with ``p_non[0] = p_non[Z] = 0``.
    ``p_used`` is the pass-error probability the shape was computed with
    (raw or effective); ``None`` marks the small-error flat limit.
    """

    Z: int
    p_non: np.ndarray
    C_Z: float
    p_used: float | None
    p_sj: float = 0.5

    @property
    def i_max(self) -> int:
        return g(self.Z) + 1

    @property
    def p_max(self) -> float:
        return float(self.p_non[self.i_max])

    def __getitem__(self, i: int) -> float:
        return float(self.p_non[i])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "p_non"])
        for i in range(1, self.Z):
            w.writerow([i, repr(float(self.p_non[i]))])
        return buf.getvalue()


def flat_noise_distribution(Z: int) -> NoiseDistribution:
    """The ``p -> 0`` limit: only single-flip paths survive, two per interior exit."""
    if Z < 2:
        raise NoErrorPathsError("a grid of length 1 has no interior exit")
    p_non = np.full(Z + 1, 1.0 / (Z - 1))
    p_non[0] = p_non[Z] = 0.0
    return NoiseDistribution(Z=Z, p_non=p_non, C_Z=float("nan"), p_used=None)


def noise_distribution(
    Z: int,
    p_pass_error: float,
    p_sj: float = 0.5,
    table: PathCountTable | None = None,
) -> NoiseDistribution:
    """Error-exit distribution on interior exits ``1..Z-1``.

    Exit ``i`` gets weight ``sum_m A[m][i] p^(m-1) q^(Z-m) p_sj``, summed over
    every turn count with a nonzero path count, then normalised.
    """
    if not 0.0 < p_pass_error < 1.0:
        if p_pass_error == 0.0:
            raise NoErrorPathsError(
                "no error paths at p_pass_error = 0; use flat_noise_distribution for the limit"
            )
        raise ValueError(f"p_pass_error must lie in (0, 1), got {p_pass_error}")
    if Z < 2:
        raise NoErrorPathsError("a grid of length 1 has no interior exit")
    if table is None:
        table = path_counts(Z)
    elif table.Z != Z:
        raise ValueError("path table does not match Z")
    p, q = float(p_pass_error), 1.0 - float(p_pass_error)
    weight = np.zeros(Z + 1)
    for i in range(1, Z):
        terms = [
            float(table.A[m][i]) * p ** (m - 1) * q ** (Z - m) * p_sj
            for m in range(1, table.max_turns + 1)
            if table.A[m][i]
        ]
        weight[i] = math.fsum(terms)
    C = math.fsum(weight)
    return NoiseDistribution(Z=Z, p_non=weight / C, C_Z=C, p_used=p, p_sj=p_sj)


def effective_error_prob(p_pj: float, p_sj: float, s: int, Z: int) -> float:
    """Pass-error probability with the split junctions spread evenly over all rows."""
    if not 0.0 <= p_pj < 1.0:
        raise ValueError(f"p_pj must lie in [0, 1), got {p_pj}")
    if not 0.0 < p_sj < 1.0:
        raise ValueError(f"p_sj must lie in (0, 1), got {p_sj}")
    if not 1 <= s <= Z:
        raise ValueError("need 1 <= s <= Z")
    q = 1.0 - p_pj
    return 1.0 - q * ((1.0 - p_sj) / q) ** (s / Z)


def noise_stats(dist: NoiseDistribution, N_FP: float) -> tuple[float, float]:
    """Mean and standard deviation of faulty agents at the central exit."""
    if N_FP < 0:
        raise ValueError("N_FP must be >= 0")
    pm = dist.p_max
    return pm * N_FP, math.sqrt(N_FP * pm * (1.0 - pm))


def required_per_exit(dist: NoiseDistribution, N_FP: float, ell: float = 3.0) -> int:
    """Agents a correct exit needs to rise above the worst-case noise band."""
    mean, sigma = noise_stats(dist, N_FP)
    return max(1, math.ceil(mean + ell * sigma - 1e-9))
