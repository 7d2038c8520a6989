"""Stochastic fire dynamics: per-cell transition kernel and forest update.

Cell states use a stable integer encoding (healthy=0, afire=1, burnt=2,
ext=3, nonflam=4) shared by log files and rendered frames. The forest
update is synchronous: every transition probability is computed from the
frozen pre-step state, and exactly one uniform draw is consumed per
non-absorbing cell, in row-major cell order. That draw-consumption rule
is a compatibility contract; changing it changes every seeded trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import _kernels
from .grid import Direction, Topology

WIND_EPS = 1e-9


class CellState(IntEnum):
    HEALTHY = 0
    AFIRE = 1
    BURNT = 2
    EXT = 3
    NONFLAM = 4


class ControlAction(IntEnum):
    NOP = 0
    RETARDANT = 1


ABSORBING = frozenset({CellState.BURNT, CellState.EXT, CellState.NONFLAM})


@dataclass(frozen=True)
class FireParams:
    """The scalar fire-model parameters.

    alpha0     : non-ignition likelihood per burning neighbour, no wind
    alpha_wind : non-ignition likelihood directly downwind (upper bound)
    beta       : per-step probability that a burning cell burns out
    zeta       : success probability of one retardant application
    """

    alpha0: float
    alpha_wind: float
    beta: float
    zeta: float

    def __post_init__(self):
        if not 0.0 <= self.alpha0 < 1.0:
            raise ValueError(f"alpha0 must be in [0, 1), got {self.alpha0}")
        if not 0.0 < self.alpha_wind <= 1.0:
            raise ValueError(f"alpha_wind must be in (0, 1], got {self.alpha_wind}")
        if self.alpha0 > self.alpha_wind:
            raise ValueError(
                f"alpha0 ({self.alpha0}) must not exceed alpha_wind ({self.alpha_wind})"
            )
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if not 0.0 <= self.zeta <= 1.0:
            raise ValueError(f"zeta must be in [0, 1], got {self.zeta}")


def validate_wind(w) -> tuple[float, float]:
    """Canonicalise a wind vector: norm must be 0 or 1 (within 1e-9)."""
    wx, wy = float(w[0]), float(w[1])
    norm = math.hypot(wx, wy)
    if norm <= WIND_EPS:
        return (0.0, 0.0)
    if abs(norm - 1.0) > WIND_EPS:
        raise ValueError(f"wind must have norm 0 or 1, got norm {norm}")
    return (wx, wy)


@dataclass
class ForestState:
    """Full forest state: one int8 per cell plus the step counter."""

    cells: np.ndarray
    topology: Topology
    t: int = 0

    def copy(self) -> "ForestState":
        return ForestState(self.cells.copy(), self.topology, self.t)


def make_forest(topology: Topology, fill: int = CellState.HEALTHY) -> ForestState:
    cells = np.full((topology.n, topology.n), int(fill), dtype=np.int8)
    return ForestState(cells, topology, 0)


def non_ignition_prob(e, w, params: FireParams) -> float:
    """Probability that a burning neighbour in direction `e` fails to ignite.

    With no wind this is alpha0. With unit wind w it is
    alpha0*|w| / (1 - (1 - alpha0/alpha_wind) * e.w), which rises to
    exactly alpha_wind when e points straight downwind (e.w = 1; evaluated
    algebraically there so the bound is exact in floating point). alpha0=0
    means ignition is certain and the result is pinned to 0.
    """
    if isinstance(e, Direction):
        ex, ey = e.vector
    else:
        ex, ey = float(e[0]), float(e[1])
    if abs(math.hypot(ex, ey) - 1.0) > WIND_EPS:
        raise ValueError(f"direction vector must be unit length, got ({ex}, {ey})")
    wx, wy = validate_wind(w)
    if wx == 0.0 and wy == 0.0:
        return params.alpha0
    if params.alpha0 == 0.0:
        return 0.0
    norm_w = math.hypot(wx, wy)
    dot = ex * wx + ey * wy
    dot = max(-1.0, min(1.0, dot))
    if dot == 1.0:
        return params.alpha_wind * norm_w
    alpha = params.alpha0 * norm_w / (1.0 - (1.0 - params.alpha0 / params.alpha_wind) * dot)
    if not 0.0 < alpha <= 1.0 + 1e-12:
        raise ValueError(
            f"non-ignition likelihood {alpha} outside (0, 1]; "
            f"check params {params} against wind ({wx}, {wy})"
        )
    return alpha


def alpha_by_slot(topology: Topology, w, params: FireParams) -> np.ndarray:
    """Per-direction-slot non-ignition likelihoods for a fixed wind."""
    return np.array(
        [non_ignition_prob(d, w, params) for d in topology.directions],
        dtype=np.float64,
    )


def ignition_prob(cell, forest: ForestState, w, params: FireParams) -> float:
    """Probability that the healthy cell `cell` catches fire this step.

    1 minus the product of non-ignition likelihoods over the directions
    that point at burning neighbours; 0 when none burn.
    """
    topo = forest.topology
    topo.check_cell(cell)
    prod = 1.0
    for neighbor, direction in topo.neighbors(cell):
        if forest.cells[neighbor] == CellState.AFIRE:
            prod *= non_ignition_prob(direction, w, params)
    return 1.0 - prod


def cell_transition(state, action, p_ha: float, params: FireParams, draw: float):
    """Next state of one cell given its uniform draw in [0, 1).

    Reference scalar form of the transition table; the array kernels in
    _kernels must partition the draw interval identically. The afire row
    clamps the burn-out probability to min(beta, 1 - p_ae) so the row
    stays a distribution when beta + zeta > 1 (retardant takes priority).
    """
    state = CellState(state)
    if state is CellState.HEALTHY:
        return CellState.AFIRE if draw < p_ha else CellState.HEALTHY
    if state is CellState.AFIRE:
        p_ae = params.zeta if action == ControlAction.RETARDANT else 0.0
        p_ab = min(params.beta, 1.0 - p_ae)
        if draw < p_ab:
            return CellState.BURNT
        if draw < p_ab + p_ae:
            return CellState.EXT
        return CellState.AFIRE
    return state


def _as_controls(controls, n: int) -> np.ndarray:
    arr = np.asarray(controls, dtype=np.int8)
    if arr.shape == (n * n,):
        arr = arr.reshape(n, n)
    if arr.shape != (n, n):
        raise ValueError(f"controls must have {n * n} entries, got shape {arr.shape}")
    return arr


def forest_step(
    forest: ForestState, controls, w, params: FireParams, rng: np.random.Generator
) -> ForestState:
    """One synchronous forest update; returns a new state with t + 1.

    Draw discipline: exactly one uniform per healthy-or-afire cell, taken
    from `rng` in row-major order. Absorbing cells consume nothing.
    """
    topo = forest.topology
    cells = forest.cells
    ctrl = _as_controls(controls, topo.n)
    wind = validate_wind(w)
    alphas = alpha_by_slot(topo, wind, params)

    active = (cells == CellState.HEALTHY) | (cells == CellState.AFIRE)
    draws = np.ones((topo.n, topo.n), dtype=np.float64)
    draws[active] = rng.random(int(active.sum()))

    new_cells = _kernels.step_cells(
        cells, ctrl, draws, alphas, params.beta, params.zeta, topo.offsets
    )
    return ForestState(new_cells, topo, forest.t + 1)


def ignite_center(forest: ForestState) -> ForestState:
    """Set the cell nearest the planar centroid afire (lowest index on ties)."""
    topo = forest.topology
    centers = topo.centers.reshape(-1, 2)
    centroid = centers.mean(axis=0)
    d2 = ((centers - centroid) ** 2).sum(axis=1)
    flat = int(np.argmin(d2))
    out = forest.copy()
    out.cells[flat // topo.n, flat % topo.n] = CellState.AFIRE
    return out
