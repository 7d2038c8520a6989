"""State census and the episode cost function."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ForestState


@dataclass(frozen=True)
class StateCensus:
    n_healthy: int
    n_afire: int
    n_burnt: int
    n_ext: int
    n_nonflam: int

    @property
    def total(self) -> int:
        return self.n_healthy + self.n_afire + self.n_burnt + self.n_ext + self.n_nonflam


@dataclass(frozen=True)
class CostCoefficients:
    c_healthy: float = 1.0
    c_ext: float = 1.0
    c_time: float = 0.0


def calc_statistic(forest: ForestState) -> StateCensus:
    counts = np.bincount(forest.cells.ravel(), minlength=5)
    return StateCensus(*(int(c) for c in counts[:5]))


def success_metric(census: StateCensus, t: int, coeffs: CostCoefficients) -> float:
    """Cost of a forest state: weighted healthy and extinguished counts plus time."""
    return (
        coeffs.c_healthy * census.n_healthy
        + coeffs.c_ext * census.n_ext
        + coeffs.c_time * t
    )
