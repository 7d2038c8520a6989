"""Decision layer for the firefighting agents.

A strategy is consulted twice per micro-step: once before the move (its
move_slot is taken from the observation sensed last tick) and once after
(its action is taken from the fresh observation). Decisions must be pure
functions of the observation; the engine exposes no other state.

The built-in two-phase heuristic first walks straight toward the initial
fire source, then, once the agent has ever seen fire, follows the fire
front counterclockwise around the source, dropping retardant whenever the
cell underneath is burning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dynamics import CellState, ControlAction
from .grid import Topology


@dataclass(frozen=True)
class StrategyDecision:
    move_slot: int
    action: ControlAction


class Strategy:
    """Template for user strategies.

    Implement decide(); optionally override start_episode() to precompute
    from the initial forest state. decide() receives only an Observation
    and the immutable topology, and returns a StrategyDecision whose
    move_slot names a direction slot (0..n_slots-1) and whose action is
    nop or retardant. Illegal slots are replaced by a canonical fallback
    move and logged, not raised.
    """

    def start_episode(self, initial_fire: np.ndarray, topology: Topology) -> None:
        pass

    def decide(self, obs, topology: Topology) -> StrategyDecision:
        raise NotImplementedError


def _fire_centroid(initial_fire: np.ndarray, topology: Topology) -> tuple[float, float]:
    """Planar mean of the burning cells in x(0); grid centre if none burn."""
    rows, cols = np.nonzero(initial_fire == int(CellState.AFIRE))
    if len(rows) == 0:
        pts = topology.centers.reshape(-1, 2)
    else:
        pts = topology.centers[rows, cols]
    x, y = pts.mean(axis=0)
    return (float(x), float(y))


def _ccw_delta(angle_to: float, angle_from: float) -> float:
    """Signed counterclockwise angle increment, wrapped to [-pi, pi)."""
    return (angle_to - angle_from + math.pi) % (2.0 * math.pi) - math.pi


class HeuristicStrategy(Strategy):
    """Two-phase heuristic: approach the source, then orbit the front."""

    def decide(self, obs, topology: Topology) -> StrategyDecision:
        if obs.self_memory:
            slot = self._front_follow_slot(obs, topology)
            if slot is None:
                slot = self._approach_slot(obs, topology)
        else:
            slot = self._approach_slot(obs, topology)
        action = (
            ControlAction.RETARDANT
            if obs.camera[0] == int(CellState.AFIRE)
            else ControlAction.NOP
        )
        return StrategyDecision(move_slot=slot, action=action)

    def _approach_slot(self, obs, topology: Topology) -> int:
        """Greedy step: the in-grid neighbour closest to the source centroid."""
        sx, sy = _fire_centroid(obs.initial_fire, topology)
        best_slot, best_d2 = 0, math.inf
        for k in range(topology.n_slots):
            j = topology.shift(obs.self_position, k)
            if j is None:
                continue
            cx, cy = topology.centers[j[0], j[1]]
            d2 = (cx - sx) ** 2 + (cy - sy) ** 2
            if d2 < best_d2:
                best_slot, best_d2 = k, d2
        return best_slot

    def _front_follow_slot(self, obs, topology: Topology) -> int | None:
        """Neighbour with maximal counterclockwise progress around the source,
        among neighbours that keep some seen afire/burnt cell in camera range.
        None when no such neighbour exists (caller falls back to approach)."""
        ring = topology.ring1_view(obs.self_position)
        seen_fire = [
            pos
            for pos, state in zip(ring, obs.camera)
            if pos is not None
            and state in (int(CellState.AFIRE), int(CellState.BURNT))
        ]
        if not seen_fire:
            return None
        sx, sy = _fire_centroid(obs.initial_fire, topology)
        px, py = topology.centers[obs.self_position[0], obs.self_position[1]]
        here_angle = math.atan2(py - sy, px - sx)
        best_slot, best_delta = None, -math.inf
        for k in range(topology.n_slots):
            j = topology.shift(obs.self_position, k)
            if j is None:
                continue
            in_view = set(topology.ring1_view(j))
            if not any(f in in_view for f in seen_fire):
                continue
            cx, cy = topology.centers[j[0], j[1]]
            delta = _ccw_delta(math.atan2(cy - sy, cx - sx), here_angle)
            if delta > best_delta:
                best_slot, best_delta = k, delta
        return best_slot


_registry: dict[str, Callable[[], Strategy]] = {}


def register_strategy(name: str, factory: Callable[[], Strategy]) -> None:
    _registry[name.lower()] = factory


def register_user_strategy(factory: Callable[[], Strategy]) -> None:
    """Install the strategy selected by agent_mode: user."""
    register_strategy("user", factory)


def make_strategy(name: str) -> Strategy:
    key = name.lower()
    if key not in _registry:
        known = ", ".join(sorted(_registry))
        raise ValueError(f"unknown strategy {name!r}; registered: {known}")
    return _registry[key]()


register_strategy("haksar", HeuristicStrategy)
