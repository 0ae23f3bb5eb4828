"""Exact counts of error paths through a pure pass-junction grid.

A path of length ``Z`` starts with a 50/50 choice (vertical or diagonal) and
then crosses ``Z - 1`` pass junctions, each of which may flip the direction.
``A[m][i]`` counts paths that end at exit ``i`` after ``m`` turns, where
``m = 1`` is the flip-free path and every flip adds one. ``vA`` and ``dA`` are
the shares that start vertically and diagonally.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

#: Largest grid for which the recursive table is built.
MAX_Z_RECURSIVE = 64
#: Largest grid the path enumeration oracle accepts (2**Z paths).
MAX_Z_ORACLE = 22


class PathCountOverflowError(OverflowError):
    pass


def g(m: int) -> int:
    """Width of the zero band at the edges for ``m`` turns: ``floor(m/2) - 1``."""
    return (m - m % 2) // 2 - 1


@dataclass(frozen=True)
class PathCountTable:
    """Exact path counts for one grid length.

    Rows are indexed by ``m`` (row 0 is unused and all zero), columns by exit
    ``i = 0..Z``.
    """

    Z: int
    A: tuple[tuple[int, ...], ...]
    vA: tuple[tuple[int, ...], ...]
    dA: tuple[tuple[int, ...], ...]

    @property
    def max_turns(self) -> int:
        return len(self.A) - 1

    def total(self) -> int:
        return sum(sum(row) for row in self.A)

    def nonzero_turns(self) -> list[int]:
        return [m for m in range(1, len(self.A)) if any(self.A[m])]

    def as_array(self, which: str = "A") -> np.ndarray:
        """Object array (exact ints) of shape ``(max_turns + 1, Z + 1)``."""
        return np.array(getattr(self, which), dtype=object)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "m", "A", "vA", "dA"])
        for m in range(1, len(self.A)):
            for i in range(self.Z + 1):
                if self.A[m][i]:
                    w.writerow([i, m, self.A[m][i], self.vA[m][i], self.dA[m][i]])
        return buf.getvalue()


def _layer_tables(Z: int):
    """vA, dA for every sub-grid length 1..Z.

    ``v[L][m][i]`` and ``d[L][m][i]``; rows for ``m > L`` stay zero.
    """
    rows = max(Z, 3) + 1
    v = [None] + [[[0] * (L + 1) for _ in range(rows)] for L in range(1, Z + 1)]
    d = [None] + [[[0] * (L + 1) for _ in range(rows)] for L in range(1, Z + 1)]
    for L in range(1, Z + 1):
        vL, dL = v[L], d[L]
        vL[1][0] = 1
        dL[1][L] = 1
        for i in range(1, L):
            vL[2][i] = dL[2][i] = 1
            vL[3][i] = L - 1 - i
            dL[3][i] = i - 1
        for m in range(4, L + 1):
            gm, gm1 = g(m), g(m - 1)
            for i in range(gm + 1, L - gm):
                # diagonal first run of length j, then a vertical-start path
                diag = 0
                for j in range(1, i - gm + 1):
                    if L - j >= 1:
                        diag += v[L - j][m - 1][i - j]
                # vertical first run of length j, then a diagonal-start path
                vert = 0
                for j in range(1, L - (gm1 + 1 + i) + 1):
                    vert += d[L - j][m - 1][i]
                vL[m][i] = vert
                dL[m][i] = diag
    return v, d


def path_counts(Z: int) -> PathCountTable:
    """Recursive path-count table for a grid of length ``Z`` (``1 <= Z <= 64``).

    The sums are exact Python integers; the size guard keeps every entry
    representable as an unsigned 64-bit count, so exporting the table to
    fixed-width formats is lossless.
    """
    if int(Z) != Z or not 1 <= Z <= MAX_Z_RECURSIVE:
        raise ValueError(f"Z must be an integer in [1, {MAX_Z_RECURSIVE}], got {Z}")
    Z = int(Z)
    v, d = _layer_tables(Z)
    vZ, dZ = v[Z][: Z + 1], d[Z][: Z + 1]
    A = [[vZ[m][i] + dZ[m][i] for i in range(Z + 1)] for m in range(Z + 1)]
    for m in range(1, Z + 1):
        gm = g(m)
        for i in range(Z + 1):
            if A[m][i] and (i <= gm or i >= Z - gm):
                raise AssertionError(f"zero band violated at m={m}, i={i}")
            if A[m][i] >= 2**64:
                raise PathCountOverflowError(f"A[{m}][{i}] exceeds 64 bits")
    return PathCountTable(
        Z=Z,
        A=tuple(tuple(r) for r in A),
        vA=tuple(tuple(r) for r in vZ),
        dA=tuple(tuple(r) for r in dZ),
    )


def enumerate_paths(Z: int, chunk_bits: int = 20):
    """Yield ``(first_diagonal, exit, flips)`` arrays for all ``2**Z`` paths.

    Bit ``Z-1`` of the path code is the direction on row 1, bit 0 the
    direction on row Z.
    """
    total = 1 << Z
    step = 1 << min(Z, chunk_bits)
    for start in range(0, total, step):
        codes = np.arange(start, min(start + step, total), dtype=np.uint64)
        bits = (codes[:, None] >> np.arange(Z, dtype=np.uint64)[None, :]) & np.uint64(1)
        bits = bits.astype(np.int8)
        exit_ = bits.sum(axis=1).astype(np.int64)
        flips = np.count_nonzero(bits[:, 1:] != bits[:, :-1], axis=1).astype(np.int64)
        first = bits[:, Z - 1].astype(bool)
        yield first, exit_, flips


def brute_force_path_distribution(Z: int, p_pass_error: float, p_sj: float = 0.5):
    """Path table and error-exit distribution by exhaustive enumeration.

    Every one of the ``2 * 2**(Z-1)`` initial-direction/flip patterns is
    visited once; its probability ``p_sj * p**flips * q**(Z-1-flips)`` is
    accumulated on its exit. Returns ``(PathCountTable, NoiseDistribution)``;
    the distribution is ``None`` when ``p_pass_error == 0``.
    """
    from .noise import NoiseDistribution

    if int(Z) != Z or not 1 <= Z <= MAX_Z_ORACLE:
        raise ValueError(f"oracle needs 1 <= Z <= {MAX_Z_ORACLE}, got {Z}")
    Z = int(Z)
    p = float(p_pass_error)
    q = 1.0 - p
    vA = np.zeros((Z + 1, Z + 1), dtype=np.int64)
    dA = np.zeros((Z + 1, Z + 1), dtype=np.int64)
    weight = np.zeros(Z + 1)
    # per-flip-count path probability; flips range 0..Z-1
    fl = np.arange(Z)
    path_prob = p_sj * p**fl * q ** (Z - 1 - fl)
    for first, exit_, flips in enumerate_paths(Z):
        m = flips + 1
        idx = m * (Z + 1) + exit_
        size = (Z + 1) * (Z + 1)
        dA += np.bincount(idx[first], minlength=size).reshape(Z + 1, Z + 1)
        vA += np.bincount(idx[~first], minlength=size).reshape(Z + 1, Z + 1)
        interior = (exit_ > 0) & (exit_ < Z)
        weight += np.bincount(exit_[interior], weights=path_prob[flips[interior]], minlength=Z + 1)
    A = vA + dA
    table = PathCountTable(
        Z=Z,
        A=tuple(tuple(int(x) for x in r) for r in A),
        vA=tuple(tuple(int(x) for x in r) for r in vA),
        dA=tuple(tuple(int(x) for x in r) for r in dA),
    )
    dist = None
    if p > 0 and Z >= 2:
        C = weight.sum()
        dist = NoiseDistribution(Z=Z, p_non=weight / C, C_Z=float(C), p_used=p, p_sj=p_sj)
    return table, dist
