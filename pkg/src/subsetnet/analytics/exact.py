"""Exact exit probabilities for a full grid under an error model.

Propagates the joint law of (exit so far, direction, flipped-yet) row by
row. Independent of both the Monte Carlo simulator and the pass-only path
recursion, so it can check either.
"""

from __future__ import annotations

import numpy as np

from ..grid import GridLayout, RowKind
from ..simulator import ErrorModel


def exact_exit_distribution(grid: GridLayout, model: ErrorModel) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(p_correct, p_faulty)``, each of length ``Z + 1``.

    ``p_correct[i]`` is the probability of reaching exit ``i`` with no
    pass-junction flip, ``p_faulty[i]`` with at least one.
    """
    Z = grid.Z
    ratios = model.ratios_for(grid.n_blocks)
    p, q = model.p_pass_error, 1.0 - model.p_pass_error
    # prob[flipped, diagonal, exit_so_far]
    prob = np.zeros((2, 2, Z + 1))
    prob[0, 0, 0] = 1.0
    for row in grid.rows:
        nxt = np.zeros_like(prob)
        if row.kind is RowKind.SPLIT:
            beta = ratios[row.block - 1]
            for f in (0, 1):
                mass = prob[f].sum(axis=0)
                nxt[f, 0] += (1.0 - beta) * mass
                nxt[f, 1, 1:] += beta * mass[:-1]
        else:
            for f in (0, 1):
                # keep direction
                nxt[f, 0] += q * prob[f, 0]
                nxt[f, 1, 1:] += q * prob[f, 1, :-1]
                # flip direction: always lands in the flipped layer
                nxt[1, 1, 1:] += p * prob[f, 0, :-1]
                nxt[1, 0] += p * prob[f, 1]
        prob = nxt
    return prob[0].sum(axis=0), prob[1].sum(axis=0)
