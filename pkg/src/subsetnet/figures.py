"""Datasets behind each published figure panel: analytic curves plus a
seeded simulation overlay, as plain tables ready for external plotting."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .analytics import (
    ConfidenceParams,
    effective_error_prob,
    evaluate_chain,
    noise_distribution,
    plan_agents,
)
from .analytics.planning import P_SPLIT_FLIP
from .classifier import classify, compute_bands, verify
from .grid import SubsetInstance, build_grid
from .simulator import ErrorModel, simulate_simplistic, simulate_traced

DISTRIBUTION_AGENTS = 10**6


@dataclass(frozen=True)
class Panel:
    kind: str  # "bands", "simplistic" or "split"
    elements: tuple[int, ...]
    p_pj: float
    n_i: int | None = None  # pinned per-exit floor; None runs the planner


PANELS: dict[str, Panel] = {
    "2": Panel("bands", (5, 6, 7), 0.0, 1),
    "3a": Panel("simplistic", (18,), 0.01),
    "3b": Panel("simplistic", (18,), 0.15),
    # error-exit distribution with split junctions, raw vs effective probability
    "split-a": Panel("split", (5, 6, 7), 0.01),
    "split-b": Panel("split", (5, 6, 7), 0.15),
    "split-c": Panel("split", (2, 3, 5, 7), 0.01),
    "split-d": Panel("split", (2, 3, 5, 7), 0.15),
    "4a": Panel("bands", (2, 3, 7), 0.01, 6),
    "4b": Panel("bands", (5, 6, 7), 0.01, 6),
    "4c": Panel("bands", (2, 3, 6, 7), 0.01),
    "4d": Panel("bands", (2, 3, 7, 6, 4), 0.01),
    "5a": Panel("bands", (5, 6, 7), 0.02, 10),
    "5b": Panel("bands", (5, 6, 7), 0.05, 28),
    "5c": Panel("bands", (5, 6, 7), 0.08, 64),
    "5d": Panel("bands", (5, 6, 7), 0.1, 104),
}

BANDS_COLUMNS = ["exit", "count", "correct", "faulty", "noise_lo", "noise_hi",
                 "signal_lo", "signal_hi", "multiplicity", "verdict"]
DISTRIBUTION_COLUMNS = {
    "simplistic": ["exit", "p_non_analytic", "p_non_simulated"],
    "split": ["exit", "p_non_raw", "p_non_effective", "p_non_simulated"],
}


def _table(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def reproduce_panel(figure: str, seed: int = 0, ell: float = 3.0, threads: int = 1) -> tuple[str, dict]:
    """Return ``(csv_text, metadata)`` for one panel id (see ``PANELS``)."""
    if figure not in PANELS:
        raise KeyError(f"unknown figure {figure!r}; choose from {', '.join(PANELS)}")
    panel = PANELS[figure]
    inst = SubsetInstance(panel.elements)
    meta = {"figure": figure, "kind": panel.kind, "elements": list(panel.elements),
            "p_pj": panel.p_pj, "seed": seed}

    if panel.kind == "simplistic":
        Z = inst.n_tot
        hist = simulate_simplistic(Z, panel.p_pj, DISTRIBUTION_AGENTS, seed, threads)
        sim = hist.faulty_distribution()
        ana = noise_distribution(Z, panel.p_pj).p_non
        rows = [[i, _fmt(ana[i]), _fmt(sim[i])] for i in range(1, Z)]
        meta["n_agents"] = DISTRIBUTION_AGENTS
        return _table(DISTRIBUTION_COLUMNS["simplistic"], rows), meta

    if panel.kind == "split":
        Z = inst.n_tot
        p_eff = effective_error_prob(panel.p_pj, P_SPLIT_FLIP, inst.s, Z)
        raw = noise_distribution(Z, panel.p_pj).p_non
        eff = noise_distribution(Z, p_eff).p_non
        hist = simulate_traced(build_grid(inst), ErrorModel(panel.p_pj), DISTRIBUTION_AGENTS, seed, threads)
        sim = hist.faulty_distribution()
        rows = [[i, _fmt(raw[i]), _fmt(eff[i]), _fmt(sim[i])] for i in range(1, Z)]
        meta.update(n_agents=DISTRIBUTION_AGENTS, p_eff=p_eff)
        return _table(DISTRIBUTION_COLUMNS["split"], rows), meta

    model = ErrorModel(panel.p_pj)
    params = ConfidenceParams(ell=ell)
    if panel.n_i is not None:
        plan = evaluate_chain(inst, model, panel.n_i, params)
    else:
        plan = plan_agents(inst, model, params)
    N = plan.N_min_non
    dist = None
    if plan.N_FP > 0:
        dist = noise_distribution(inst.n_tot, plan.p_eff, p_sj=P_SPLIT_FLIP)
    bands = compute_bands(inst, plan, dist, N, ell)
    hist = simulate_traced(build_grid(inst), model, N, seed, threads)
    report = classify(hist, bands)
    verify(inst, report)
    rows = []
    for b, v in zip(bands, report.verdicts):
        i = b.exit
        rows.append([i, hist.counts[i], hist.correct[i], hist.faulty[i], _fmt(b.noise_lo),
                     _fmt(b.noise_hi), _fmt(b.signal_lo), _fmt(b.signal_hi), b.multiplicity, v.value])
    meta.update(n_agents=N, plan=plan.to_dict(), summary=report.summary())
    return _table(BANDS_COLUMNS, rows), meta
