"""Simulation and statistics for network-based subset sum computation."""

__version__ = "0.1.0"

from .grid import (
    ExitSpectrum,
    GridLayout,
    InstanceTooLargeError,
    RowKind,
    SubsetInstance,
    build_grid,
    correct_exits,
    enumerate_subset_sums,
)
from .simulator import ErrorModel, ExitHistogram, simulate, simulate_simplistic, simulate_traced

__all__ = [
    "ErrorModel",
    "ExitHistogram",
    "ExitSpectrum",
    "GridLayout",
    "InstanceTooLargeError",
    "RowKind",
    "SubsetInstance",
    "build_grid",
    "correct_exits",
    "enumerate_subset_sums",
    "simulate",
    "simulate_simplistic",
    "simulate_traced",
]
