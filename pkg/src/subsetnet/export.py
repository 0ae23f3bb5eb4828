"""CSV and JSON writers for histograms, plans and sidecars."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from . import __version__
from .simulator import ExitHistogram


def histogram_csv(hist: ExitHistogram) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if hist.is_traced:
        w.writerow(["exit", "count", "correct", "faulty"])
        for i in range(hist.Z + 1):
            w.writerow([i, hist.counts[i], hist.correct[i], hist.faulty[i]])
    else:
        w.writerow(["exit", "count"])
        for i in range(hist.Z + 1):
            w.writerow([i, hist.counts[i]])
    return buf.getvalue()


def read_histogram_csv(text: str) -> ExitHistogram:
    rows = list(csv.DictReader(io.StringIO(text)))
    counts = [int(r["count"]) for r in rows]
    if rows and "faulty" in rows[0]:
        return ExitHistogram(
            counts,
            correct=[int(r["correct"]) for r in rows],
            faulty=[int(r["faulty"]) for r in rows],
        )
    return ExitHistogram(counts)


def sidecar(config: dict, **extra) -> dict:
    return {"version": __version__, "config": config, **extra}


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if hasattr(o, "value"):
        return o.value
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, indent=indent, default=_default, sort_keys=False)


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def write_json(path: Path, obj) -> None:
    write_text(path, dumps(obj) + "\n")
