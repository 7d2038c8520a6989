"""Firefighting agents: placement, movement, sensing, and the action schedule.

Agents act strictly in ascending id order. Each micro-step an agent moves
(using the observation from its previous sense), senses at the new
position, and may apply retardant there; six micro-steps precede every
forest update. Movement conflicts resolve deterministically: lower ids
win, a blocked agent diverts to its first free neighbour in slot order,
and an agent with no free neighbour stays put (logged, since the model
says agents must move).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .dynamics import (
    CellState,
    ControlAction,
    FireParams,
    ForestState,
    forest_step,
)
from .grid import CellIndex, Topology

log = logging.getLogger(__name__)

MICRO_STEPS_PER_UPDATE = 6


@dataclass
class AgentState:
    id: int
    position: CellIndex
    memory: bool = False
    # engine-held cache of the last sensed observation, not part of identity
    last_obs: "Observation | None" = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class Observation:
    """Everything a strategy may legally see.

    camera entries follow the ring-1 order (own cell first, then one per
    direction slot); off-grid entries read as nonflam. initial_fire is the
    full forest state at t=0 (the radio broadcast); retardant and
    agent_positions are the current agent-board signal. The live forest
    state appears nowhere else.
    """

    camera: tuple[int, ...]
    initial_fire: np.ndarray
    agent_positions: tuple[tuple[int, CellIndex], ...]
    retardant: np.ndarray
    self_id: int
    self_position: CellIndex
    self_memory: bool


@dataclass
class Board:
    """Shared agent-board state for one episode: x(0) plus (u, z)."""

    initial_fire: np.ndarray
    agents: list[AgentState]
    retardant: np.ndarray


def make_board(forest: ForestState, agents: list[AgentState]) -> Board:
    x0 = forest.cells.copy()
    x0.setflags(write=False)
    retardant = np.zeros((forest.topology.n, forest.topology.n), dtype=np.int8)
    return Board(x0, agents, retardant)


def place_agents(topology: Topology, count: int) -> list[AgentState]:
    """Place `count` agents evenly spaced along the grid boundary."""
    if count < 0:
        raise ValueError(f"agent count must be >= 0, got {count}")
    boundary = topology.boundary_cells()
    if count > len(boundary):
        raise ValueError(
            f"cannot place {count} agents on {len(boundary)} boundary cells"
        )
    perimeter = len(boundary)
    return [
        AgentState(id=k, position=boundary[k * perimeter // count])
        for k in range(count)
    ]


def sense(agent: AgentState, forest: ForestState, board: Board) -> Observation:
    """Read the camera and radio at the agent's position; updates memory."""
    topo = forest.topology
    ring = topo.ring1_view(agent.position)
    camera = tuple(
        int(forest.cells[pos]) if pos is not None else int(CellState.NONFLAM)
        for pos in ring
    )
    if not agent.memory and any(
        s in (CellState.AFIRE, CellState.BURNT) for s in camera
    ):
        agent.memory = True
    return Observation(
        camera=camera,
        initial_fire=board.initial_fire,
        agent_positions=tuple((a.id, a.position) for a in board.agents),
        retardant=board.retardant.copy(),
        self_id=agent.id,
        self_position=agent.position,
        self_memory=agent.memory,
    )


def resolve_moves(
    proposals: list[tuple[int, CellIndex | None]],
    occupied: dict[int, CellIndex],
    topology: Topology,
) -> list[tuple[int, CellIndex]]:
    """Resolve movement proposals into exclusive final positions.

    Proposals are processed in ascending agent id; each mover vacates its
    own cell first. A proposer whose target is taken (or None) falls back
    to its first free in-grid neighbour in slot order, and stays put only
    when every neighbour is occupied.
    """
    taken = set(occupied.values())
    finals: list[tuple[int, CellIndex]] = []
    for agent_id, target in sorted(proposals):
        current = occupied[agent_id]
        taken.discard(current)
        choice: CellIndex | None = None
        if target is not None and target not in taken:
            choice = target
        else:
            for k in range(topology.n_slots):
                cand = topology.shift(current, k)
                if cand is not None and cand not in taken:
                    choice = cand
                    break
        if choice is None:
            choice = current
            log.warning(
                "agent %d fully blocked at %s; staying put (must-move violated)",
                agent_id,
                current,
            )
        taken.add(choice)
        finals.append((agent_id, choice))
    return finals


def _proposed_target(agent, decision, topology) -> CellIndex | None:
    slot = decision.move_slot
    if not isinstance(slot, int) or not 0 <= slot < topology.n_slots:
        log.warning(
            "agent %d: illegal direction slot %r; using canonical fallback",
            agent.id,
            slot,
        )
        return None
    return topology.shift(agent.position, slot)


def micro_step(
    agents: list[AgentState],
    forest: ForestState,
    board: Board,
    strategy,
    params: FireParams,
    rng: np.random.Generator,
) -> ForestState:
    """One agent tick: every agent moves, senses, and acts, in id order.

    Retardant applied over a burning cell triggers an immediate extinguish
    trial (success probability zeta, one draw per application). The forest
    time counter does not advance here.
    """
    working = ForestState(forest.cells.copy(), forest.topology, forest.t)
    topo = forest.topology
    for agent in sorted(agents, key=lambda a: a.id):
        if agent.last_obs is None:
            agent.last_obs = sense(agent, working, board)
        decision = strategy.decide(agent.last_obs, topo)
        target = _proposed_target(agent, decision, topo)
        occupied = {a.id: a.position for a in agents}
        ((_, final),) = resolve_moves([(agent.id, target)], occupied, topo)
        agent.position = final
        agent.last_obs = sense(agent, working, board)
        action = strategy.decide(agent.last_obs, topo).action
        if action == ControlAction.RETARDANT:
            board.retardant[agent.position] = int(ControlAction.RETARDANT)
            if working.cells[agent.position] == CellState.AFIRE:
                if rng.random() < params.zeta:
                    working.cells[agent.position] = int(CellState.EXT)
    return working


def macro_step(
    agents: list[AgentState],
    forest: ForestState,
    board: Board,
    wind,
    params: FireParams,
    strategy,
    rng: np.random.Generator,
    on_micro_step=None,
) -> tuple[ForestState, int]:
    """Six agent micro-steps followed by one synchronous forest update.

    The forest update runs with all-nop controls: extinguish trials were
    already consumed inside the micro-steps, so the update covers spread
    and burn-down only. Returns the new forest and the number of cells
    marked with retardant during this macro-step; the retardant map is
    reset afterwards.
    """
    board.retardant[:] = int(ControlAction.NOP)
    for tick in range(MICRO_STEPS_PER_UPDATE):
        forest = micro_step(agents, forest, board, strategy, params, rng)
        if on_micro_step is not None:
            on_micro_step(tick, agents, forest, board)
    marked = int((board.retardant == int(ControlAction.RETARDANT)).sum())
    nop = np.zeros((forest.topology.n, forest.topology.n), dtype=np.int8)
    forest = forest_step(forest, nop, wind, params, rng)
    board.retardant[:] = int(ControlAction.NOP)
    return forest, marked
