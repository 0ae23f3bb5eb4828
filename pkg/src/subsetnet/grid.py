"""Junction-grid encoding of a subset sum instance.

Every element ``N_j`` of the set contributes a block of ``N_j`` consecutive
rows. The first row of a block is a split junction (include or exclude the
element), the remaining ``N_j - 1`` rows are pass junctions that keep the
agent on its lane. The exit an agent reaches is the number of rows it
traversed diagonally, so correct exits are exactly the achievable subset sums.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

#: Largest cardinality the brute-force subset oracle accepts.
MAX_ORACLE_ELEMENTS = 30


class InstanceTooLargeError(ValueError):
    """Raised when an exhaustive oracle is asked to enumerate too much."""


class RowKind(str, Enum):
    SPLIT = "SPLIT"
    PASS = "PASS"


@dataclass(frozen=True)
class SubsetInstance:
    """A multiset of positive integers, in the order given by the user."""

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        elems = tuple(elements)
        if not elems:
            raise ValueError("instance must contain at least one element")
        for e in elems:
            if isinstance(e, bool) or int(e) != e:
                raise ValueError(f"elements must be integers, got {e!r}")
            if e < 1:
                raise ValueError("elements must be positive")
        object.__setattr__(self, "elements", tuple(int(e) for e in elems))

    @property
    def s(self) -> int:
        return len(self.elements)

    @property
    def n_tot(self) -> int:
        return sum(self.elements)

    Z = n_tot

    @property
    def n_split(self) -> int:
        return self.s

    @property
    def n_pass(self) -> int:
        return self.n_tot - self.s

    @property
    def n_sol(self) -> int:
        """Number of distinct include/exclude paths, ``2**s``."""
        return 2**self.s

    @classmethod
    def parse(cls, text: str) -> "SubsetInstance":
        """Parse ``"2,3,7"`` (whitespace tolerated)."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            values = [int(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"cannot parse set {text!r}: {exc}") from None
        return cls(values)

    @classmethod
    def from_json(cls, obj) -> "SubsetInstance":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "elements" not in obj:
            raise ValueError('instance JSON must be an object with an "elements" list')
        return cls(obj["elements"])

    def to_json(self) -> dict:
        return {"elements": list(self.elements)}


@dataclass(frozen=True)
class GridRow:
    index: int  # 1-based, top to bottom
    kind: RowKind
    block: int  # 1-based element index


@dataclass(frozen=True)
class GridLayout:
    rows: tuple[GridRow, ...]

    @property
    def Z(self) -> int:
        return len(self.rows)

    @property
    def exits(self) -> range:
        return range(self.Z + 1)

    @property
    def split_rows(self) -> list[int]:
        return [r.index for r in self.rows if r.kind is RowKind.SPLIT]

    @property
    def n_pass(self) -> int:
        return sum(1 for r in self.rows if r.kind is RowKind.PASS)

    @property
    def n_blocks(self) -> int:
        return len(self.split_rows)

    def split_mask(self) -> np.ndarray:
        return np.array([r.kind is RowKind.SPLIT for r in self.rows], dtype=bool)

    def block_of_row(self) -> np.ndarray:
        """0-based block index for every row."""
        return np.array([r.block - 1 for r in self.rows], dtype=np.intp)

    def to_json(self) -> dict:
        return {
            "Z": self.Z,
            "n_split": self.n_blocks,
            "n_pass": self.n_pass,
            "split_rows": self.split_rows,
            "rows": [
                {"row": r.index, "kind": r.kind.value, "block": r.block}
                for r in self.rows
            ],
            "exits": [0, self.Z],
        }

    @classmethod
    def simplistic(cls, Z: int) -> "GridLayout":
        """One split junction followed by ``Z - 1`` pass junctions."""
        if Z < 1:
            raise ValueError("Z must be >= 1")
        return build_grid(SubsetInstance([Z]))


def build_grid(instance: SubsetInstance) -> GridLayout:
    rows = []
    idx = 1
    for block, n in enumerate(instance.elements, start=1):
        for k in range(n):
            rows.append(GridRow(idx, RowKind.SPLIT if k == 0 else RowKind.PASS, block))
            idx += 1
    return GridLayout(tuple(rows))


@dataclass(frozen=True)
class ExitSpectrum:
    """Number of subsets summing to each exit ``0..Z``."""

    multiplicity: tuple[int, ...]

    @property
    def Z(self) -> int:
        return len(self.multiplicity) - 1

    def __getitem__(self, i: int) -> int:
        return self.multiplicity[i]

    @property
    def total(self) -> int:
        return sum(self.multiplicity)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.multiplicity, dtype=np.int64)

    def solutions(self) -> list[int]:
        return [i for i, m in enumerate(self.multiplicity) if m > 0]


def enumerate_subset_sums(instance: SubsetInstance) -> ExitSpectrum:
    """Brute-force count of subsets per sum, over all ``2**s`` subsets.

    Deliberately exhaustive (no dynamic programming): this is the ground truth
    the statistical decoder is checked against.
    """
    s = instance.s
    if s > MAX_ORACLE_ELEMENTS:
        raise InstanceTooLargeError(
            f"instance too large for oracle: s={s} > {MAX_ORACLE_ELEMENTS}"
        )
    elems = np.asarray(instance.elements, dtype=np.int64)
    mult = np.zeros(instance.n_tot + 1, dtype=np.int64)
    # chunk the 2**s masks so memory stays bounded for s near the guard
    chunk = 1 << min(s, 20)
    bits = np.arange(s, dtype=np.uint64)
    for start in range(0, 1 << s, chunk):
        masks = np.arange(start, min(start + chunk, 1 << s), dtype=np.uint64)
        include = (masks[:, None] >> bits[None, :]) & np.uint64(1)
        sums = include.astype(np.int64) @ elems
        mult += np.bincount(sums, minlength=mult.size)
    return ExitSpectrum(tuple(int(m) for m in mult))


def correct_exits(instance: SubsetInstance) -> list[int]:
    return enumerate_subset_sums(instance).solutions()


def load_instance(source: str | dict | Sequence[int]) -> SubsetInstance:
    """Accept a ``"a,b,c"`` string, a JSON mapping, or a sequence of ints."""
    if isinstance(source, SubsetInstance):
        return source
    if isinstance(source, dict):
        return SubsetInstance.from_json(source)
    if isinstance(source, str):
        text = source.strip()
        if text.startswith("{"):
            return SubsetInstance.from_json(text)
        return SubsetInstance.parse(text)
    return SubsetInstance(source)
