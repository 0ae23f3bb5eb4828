"""Decode an exit histogram into per-exit verdicts.

Each exit gets two ``ell``-sigma bands: a noise band for agents that reach it
only through faulty paths, and a signal band for the independent sum of
correct and faulty agents. A count that clears the noise band and reaches
the signal band marks a solution.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .analytics.noise import NoiseDistribution
from .analytics.planning import AgentPlan
from .grid import InstanceTooLargeError, SubsetInstance, enumerate_subset_sums
from .simulator import ExitHistogram

log = logging.getLogger(__name__)


class Verdict(str, Enum):
    SOLUTION = "SOLUTION"
    NOT_SOLUTION = "NOT_SOLUTION"
    AMBIGUOUS = "AMBIGUOUS"


@dataclass(frozen=True)
class ExitBand:
    exit: int
    noise_lo: float
    noise_hi: float
    signal_lo: float
    signal_hi: float
    multiplicity: int

    @property
    def overlaps(self) -> bool:
        return self.noise_hi >= self.signal_lo and not self.noise_free

    @property
    def noise_free(self) -> bool:
        return self.noise_hi == 0.0


def _binom(n: float, p: float) -> tuple[float, float]:
    return n * p, n * p * (1.0 - p)


def compute_bands(
    instance: SubsetInstance,
    plan: AgentPlan,
    dist: NoiseDistribution | None,
    N_used: int,
    ell: float = 3.0,
    multiplicity: Sequence[int] | None = None,
) -> list[ExitBand]:
    """Noise and signal bands for every exit ``0..Z``.

    Of ``N_used`` agents, ``N_used * p_c`` are expected flip-free and spread
    over the subset paths (an exit reached by ``k`` subsets takes ``k/2**s``
    of them); the rest follow ``dist``. The signal band of an exit with no
    subset is the band it would have as a single-subset solution, so every
    exit can be tested against both hypotheses.
    """
    if N_used < 1:
        raise ValueError("N_used must be >= 1")
    Z = instance.n_tot
    if multiplicity is None:
        try:
            multiplicity = enumerate_subset_sums(instance).multiplicity
        except InstanceTooLargeError:
            log.warning("set too large to enumerate; assuming multiplicity 1 everywhere")
            multiplicity = [1] * (Z + 1)
    if len(multiplicity) != Z + 1:
        raise ValueError("multiplicity must have Z + 1 entries")
    N_c = N_used * plan.p_c
    N_f = N_used - N_c
    p_path = 1.0 / 2**instance.s
    bands = []
    for i in range(Z + 1):
        mult = int(multiplicity[i])
        p_n = dist[i] if (dist is not None and N_f > 0) else 0.0
        mu_n, var_n = _binom(N_f, p_n)
        mu_c, var_c = _binom(N_c, max(mult, 1) * p_path)
        half_n = ell * math.sqrt(var_n)
        half_s = ell * math.sqrt(var_c + var_n)
        bands.append(
            ExitBand(
                exit=i,
                noise_lo=max(0.0, mu_n - half_n),
                noise_hi=max(0.0, mu_n + half_n),
                signal_lo=max(0.0, mu_c + mu_n - half_s),
                signal_hi=max(0.0, mu_c + mu_n + half_s),
                multiplicity=mult,
            )
        )
    return bands


@dataclass
class VerdictReport:
    counts: np.ndarray
    bands: list[ExitBand]
    verdicts: list[Verdict]
    overlap: list[bool]
    verification: dict | None = None

    @property
    def Z(self) -> int:
        return len(self.verdicts) - 1

    def solutions(self) -> list[int]:
        return [i for i, v in enumerate(self.verdicts) if v is Verdict.SOLUTION]

    def ambiguous(self) -> list[int]:
        return [i for i, v in enumerate(self.verdicts) if v is Verdict.AMBIGUOUS]

    @property
    def outcome(self) -> str:
        return "AMBIGUOUS" if self.ambiguous() else "DECIDED"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exit", "count", "noise_lo", "noise_hi", "signal_lo", "signal_hi",
                    "multiplicity", "verdict"])
        for b, c, v in zip(self.bands, self.counts, self.verdicts):
            w.writerow([b.exit, int(c), f"{b.noise_lo:.6f}", f"{b.noise_hi:.6f}",
                        f"{b.signal_lo:.6f}", f"{b.signal_hi:.6f}", b.multiplicity, v.value])
        return buf.getvalue()

    def summary(self) -> dict:
        out = {
            "outcome": self.outcome,
            "solutions": self.solutions(),
            "ambiguous": self.ambiguous(),
            "overlapping_bands": [i for i, o in enumerate(self.overlap) if o],
            "n_agents": int(np.sum(self.counts)),
        }
        if self.verification is not None:
            out["verification"] = self.verification
        return out


def classify(histogram: ExitHistogram | Sequence[int], bands: Sequence[ExitBand]) -> VerdictReport:
    """One-sided decision per exit.

    ``count <= noise_hi`` is noise, ``count >= signal_lo`` is a solution
    (also above ``signal_hi``: exits reached by several subsets overshoot),
    anything in between is ambiguous. Where no noise can reach an exit, any
    agent there is a solution. Exits whose noise band reaches their signal
    band cannot be decided and are always ambiguous.
    """
    counts = histogram.counts if isinstance(histogram, ExitHistogram) else np.asarray(histogram)
    if len(counts) != len(bands):
        raise ValueError(f"histogram has {len(counts)} exits, bands have {len(bands)}")
    verdicts, overlap = [], []
    for c, b in zip(counts, bands):
        overlap.append(b.overlaps)
        if c <= b.noise_hi:
            v = Verdict.NOT_SOLUTION
        elif b.noise_free or c >= b.signal_lo:
            v = Verdict.SOLUTION
        else:
            v = Verdict.AMBIGUOUS
        if b.overlaps:
            v = Verdict.AMBIGUOUS
        verdicts.append(v)
    return VerdictReport(np.asarray(counts, dtype=np.int64), list(bands), verdicts, overlap)


def verify(instance: SubsetInstance, report: VerdictReport) -> dict:
    """Compare verdicts with the exhaustive subset oracle.

    Ambiguous exits count as not claimed: a true solution left ambiguous is a
    false negative.
    """
    truth = set(enumerate_subset_sums(instance).solutions())
    claimed = set(report.solutions())
    exits = set(range(report.Z + 1))
    result = {
        "true_positives": len(claimed & truth),
        "false_positives": len(claimed - truth),
        "false_negatives": len(truth - claimed),
        "true_negatives": len((exits - truth) - claimed - set(report.ambiguous())),
        "ambiguous": len(report.ambiguous()),
        "oracle_solutions": sorted(truth),
        "exact_match": claimed == truth and not report.ambiguous(),
    }
    report.verification = result
    return result
