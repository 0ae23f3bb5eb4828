"""Seeded Monte Carlo propagation of independent agents through a grid."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .grid import GridLayout

# Agents are processed in fixed-size chunks; chunk k always draws from the
# Philox stream keyed by (seed, k), so the partition into chunks (not the
# number of workers) is what the random numbers depend on.
CHUNK_SIZE = 1 << 16
MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class ErrorModel:
    """Junction error model.

    ``p_pass_error`` is the probability that a pass junction flips the
    agent's direction. ``split_ratios`` holds, per split junction, the
    probability of taking the diagonal branch; ``None`` means 0.5 everywhere.
    """

    p_pass_error: float = 0.0
    split_ratios: tuple[float, ...] | None = None

    def __post_init__(self):
        if not 0.0 <= self.p_pass_error < 1.0:
            raise ValueError(f"p_pass_error must lie in [0, 1), got {self.p_pass_error}")
        if self.split_ratios is not None:
            ratios = tuple(float(b) for b in self.split_ratios)
            for b in ratios:
                if not 0.0 < b < 1.0:
                    raise ValueError(f"split ratios must lie in (0, 1), got {b}")
            object.__setattr__(self, "split_ratios", ratios)

    @property
    def q_pass(self) -> float:
        return 1.0 - self.p_pass_error

    @property
    def is_ideal(self) -> bool:
        return self.p_pass_error == 0.0 and all(b == 0.5 for b in self.split_ratios or ())

    def ratios_for(self, n_split: int) -> tuple[float, ...]:
        if self.split_ratios is None:
            return (0.5,) * n_split
        if len(self.split_ratios) != n_split:
            raise ValueError(
                f"model has {len(self.split_ratios)} split ratios, grid has {n_split} split junctions"
            )
        return self.split_ratios

    def to_json(self) -> dict:
        return {
            "p_pass_error": self.p_pass_error,
            "split_ratios": None if self.split_ratios is None else list(self.split_ratios),
        }


@dataclass
class ExitHistogram:
    counts: np.ndarray
    correct: np.ndarray | None = None
    faulty: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if (self.correct is None) != (self.faulty is None):
            raise ValueError("correct and faulty must be given together")
        if self.correct is not None:
            self.correct = np.asarray(self.correct, dtype=np.int64)
            self.faulty = np.asarray(self.faulty, dtype=np.int64)
            if not np.array_equal(self.correct + self.faulty, self.counts):
                raise ValueError("correct + faulty must equal counts at every exit")

    @property
    def Z(self) -> int:
        return self.counts.size - 1

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def is_traced(self) -> bool:
        return self.faulty is not None

    def faulty_distribution(self, interior_only: bool = True) -> np.ndarray:
        """Faulty counts normalised to a probability vector over exits.

        With ``interior_only`` the exits 0 and Z are zeroed before
        normalising, matching the support of the error-path model.
        """
        if self.faulty is None:
            raise ValueError("histogram was not traced")
        f = self.faulty.astype(float)
        if interior_only:
            f[0] = f[-1] = 0.0
        tot = f.sum()
        if tot == 0:
            raise ValueError("no faulty agents in histogram")
        return f / tot

    def __eq__(self, other):
        if not isinstance(other, ExitHistogram):
            return NotImplemented
        same = np.array_equal(self.counts, other.counts)
        if self.is_traced or other.is_traced:
            same = same and self.is_traced and other.is_traced
            same = same and np.array_equal(self.faulty, other.faulty)
        return bool(same)


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chunk])))


def _run_chunk(split_mask, betas_per_row, p, n, seed, chunk, Z):
    rng = _chunk_rng(seed, chunk)
    u = rng.random((split_mask.size, n))
    diag = np.zeros(n, dtype=bool)
    flipped = np.zeros(n, dtype=bool)
    exit_idx = np.zeros(n, dtype=np.int64)
    for r in range(split_mask.size):
        if split_mask[r]:
            diag = u[r] < betas_per_row[r]
        elif p > 0.0:
            flip = u[r] < p
            diag ^= flip
            flipped |= flip
        exit_idx += diag
    counts = np.bincount(exit_idx, minlength=Z + 1)
    faulty = np.bincount(exit_idx[flipped], minlength=Z + 1)
    return counts, faulty


def _simulate(grid: GridLayout, model: ErrorModel, n_agents: int, seed: int, threads: int):
    if int(n_agents) != n_agents or n_agents < 1:
        raise ValueError("n_agents must be a positive integer")
    if int(seed) != seed or not 0 <= seed <= MAX_SEED:
        raise ValueError("seed must be an integer in [0, 2**64)")
    if threads is None:
        threads = 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    n_agents, seed = int(n_agents), int(seed)

    split_mask = grid.split_mask()
    if not split_mask[0]:
        raise ValueError("grid must start with a split junction")
    ratios = model.ratios_for(grid.n_blocks)
    betas_per_row = np.asarray(ratios)[grid.block_of_row()]
    Z = grid.Z

    jobs = []
    for chunk, start in enumerate(range(0, n_agents, CHUNK_SIZE)):
        jobs.append((chunk, min(CHUNK_SIZE, n_agents - start)))

    def work(job):
        chunk, n = job
        return _run_chunk(split_mask, betas_per_row, model.p_pass_error, n, seed, chunk, Z)

    if threads == 1 or len(jobs) == 1:
        parts = [work(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, jobs))

    counts = np.zeros(Z + 1, dtype=np.int64)
    faulty = np.zeros(Z + 1, dtype=np.int64)
    for c, f in parts:
        counts += c
        faulty += f
    return counts, faulty


def simulate(
    grid: GridLayout,
    model: ErrorModel,
    n_agents: int,
    seed: int,
    threads: int = 1,
) -> ExitHistogram:
    """Exit histogram of ``n_agents`` agents.

    At a split row an agent draws a fresh direction (diagonal with the
    junction's split ratio) regardless of where it came from; at a pass row it
    keeps its direction with probability ``1 - p_pass_error``. The result is a
    pure function of ``(grid, model, n_agents, seed)``; ``threads`` only
    changes wall time.
    """
    counts, _ = _simulate(grid, model, n_agents, seed, threads)
    return ExitHistogram(counts, meta=_meta(grid, model, n_agents, seed))


def simulate_traced(
    grid: GridLayout,
    model: ErrorModel,
    n_agents: int,
    seed: int,
    threads: int = 1,
) -> ExitHistogram:
    """Like :func:`simulate`, split per exit into flip-free and faulty agents.

    An agent is faulty if at least one pass junction flipped its direction.
    Uses the same random streams as :func:`simulate`, so ``counts`` agree.
    """
    counts, faulty = _simulate(grid, model, n_agents, seed, threads)
    return ExitHistogram(
        counts, correct=counts - faulty, faulty=faulty,
        meta=_meta(grid, model, n_agents, seed),
    )


def simulate_simplistic(
    Z: int, p_pass_error: float, n_agents: int, seed: int, threads: int = 1
) -> ExitHistogram:
    """Traced simulation of a pure pass-junction grid behind one 50/50 split."""
    grid = GridLayout.simplistic(Z)
    return simulate_traced(grid, ErrorModel(p_pass_error), n_agents, seed, threads)


def _meta(grid, model, n_agents, seed) -> dict:
    return {
        "Z": grid.Z,
        "split_rows": grid.split_rows,
        "model": model.to_json(),
        "n_agents": int(n_agents),
        "seed": int(seed),
        "chunk_size": CHUNK_SIZE,
    }
