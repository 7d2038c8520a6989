"""firecell: wildfire cellular automaton with firefighting agents.

Rectangular (8-neighbour) and hexagonal (6-neighbour) forest partitions,
wind-biased stochastic spread, a two-phase firefighting heuristic with
local sensing, an episode cost metric, and a seeded Monte Carlo batch
runner. Hot loops are jit-compiled via numba with a pure-numpy fallback
(set FIRECELL_NO_NUMBA=1 to force the fallback).
"""

from ._kernels import USING_NUMBA
from .agents import (
    AgentState,
    Board,
    Observation,
    macro_step,
    make_board,
    micro_step,
    place_agents,
    resolve_moves,
    sense,
)
from .config import (
    Config,
    ConfigError,
    map_slider_params,
    parse_config,
    serialize_config,
)
from .dynamics import (
    CellState,
    ControlAction,
    FireParams,
    ForestState,
    cell_transition,
    forest_step,
    ignite_center,
    ignition_prob,
    make_forest,
    non_ignition_prob,
    validate_wind,
)
from .engine import BatchReport, EpisodeLog, StepRecord, run_batch, run_episode
from .grid import CellIndex, Direction, GridKind, Topology, build_grid, direction_set
from .logfile import read_log_header, serialize_log, write_logfile
from .metrics import CostCoefficients, StateCensus, calc_statistic, success_metric
from .render import ascii_frame, png_frame, render_frame, write_gif
from .strategy import (
    HeuristicStrategy,
    Strategy,
    StrategyDecision,
    make_strategy,
    register_strategy,
    register_user_strategy,
)

__version__ = "0.1.0"
