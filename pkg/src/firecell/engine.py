"""Episode orchestration and the seeded Monte Carlo batch runner.

Reproducibility contract: the per-episode generator is derived as
``default_rng(SeedSequence([config.seed, episode_seed]))``, so a given
(config, seed) pair yields the same trajectory no matter whether it runs
alone, inside a batch, or in any batch order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .agents import macro_step, make_board, place_agents
from .config import Config, ConfigError, config_snapshot, validate_config
from .dynamics import ForestState, ignite_center, make_forest
from .grid import build_grid
from .metrics import StateCensus, calc_statistic, success_metric
from .strategy import make_strategy

TERM_FIRE_OUT = "extinguished-or-burnt"
TERM_TAU = "tau-reached"


@dataclass(frozen=True)
class StepRecord:
    t: int
    census: StateCensus
    cost: float
    agent_positions: tuple
    retardant_count: int


@dataclass
class EpisodeLog:
    config: dict[str, str]
    seed: int
    records: list[StepRecord]
    termination: str

    @property
    def length(self) -> int:
        """Number of macro-steps taken (the initial record is t=0)."""
        return self.records[-1].t


@dataclass(frozen=True)
class BatchReport:
    seeds: tuple[int, ...]
    final_costs: tuple[float, ...]
    episode_lengths: tuple[int, ...]
    logs: tuple[EpisodeLog, ...]
    mean_cost: float
    std_cost: float
    min_cost: float
    max_cost: float


def episode_rng(cfg: Config, episode_seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([cfg.seed, episode_seed]))


def run_episode(
    cfg: Config,
    seed: int | None = None,
    on_step=None,
    max_steps: int | None = None,
) -> EpisodeLog:
    """Run one seeded episode to completion.

    Stops after tau macro-steps when tau > 0, otherwise when no cell is
    afire. `on_step(forest, agents)` is invoked on the initial state and
    after every macro-step; `max_steps` is an optional safety cap for
    parameter sets whose fire never dies (beta = zeta = 0).
    """
    validate_config(cfg)
    episode_seed = cfg.seed if seed is None else seed
    if episode_seed < 0:
        raise ConfigError(f"episode seed must be >= 0, got {episode_seed}")

    topo = build_grid(cfg.grid, cfg.n)
    forest = ignite_center(make_forest(topo))
    agents = place_agents(topo, cfg.agents)
    strategy = None
    if agents:
        try:
            strategy = make_strategy(cfg.agent_mode)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    board = make_board(forest, agents)
    if strategy is not None:
        strategy.start_episode(board.initial_fire, topo)

    params = cfg.fire_params()
    wind = cfg.wind_vector()
    coeffs = cfg.cost_coeffs()
    rng = episode_rng(cfg, episode_seed)

    def record(forest: ForestState, marked: int) -> StepRecord:
        census = calc_statistic(forest)
        return StepRecord(
            t=forest.t,
            census=census,
            cost=success_metric(census, forest.t, coeffs),
            agent_positions=tuple((a.id, a.position) for a in agents),
            retardant_count=marked,
        )

    records = [record(forest, 0)]
    if on_step is not None:
        on_step(forest, agents)

    while True:
        if cfg.tau > 0:
            if forest.t >= cfg.tau:
                break
        elif records[-1].census.n_afire == 0:
            break
        if max_steps is not None and forest.t >= max_steps:
            break
        forest, marked = macro_step(
            agents, forest, board, wind, params, strategy, rng
        )
        records.append(record(forest, marked))
        if on_step is not None:
            on_step(forest, agents)

    termination = TERM_FIRE_OUT if records[-1].census.n_afire == 0 else TERM_TAU
    return EpisodeLog(
        config=config_snapshot(cfg),
        seed=episode_seed,
        records=records,
        termination=termination,
    )


def run_batch(cfg: Config, seeds) -> BatchReport:
    """One independent episode per seed; results follow the seed list order."""
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("seed list must not be empty")
    logs = tuple(run_episode(cfg, seed=s) for s in seeds)
    costs = tuple(log.records[-1].cost for log in logs)
    lengths = tuple(log.length for log in logs)
    arr = np.asarray(costs, dtype=np.float64)
    return BatchReport(
        seeds=seeds,
        final_costs=costs,
        episode_lengths=lengths,
        logs=logs,
        mean_cost=float(arr.mean()),
        std_cost=float(arr.std(ddof=1)) if len(costs) > 1 else 0.0,
        min_cost=float(arr.min()),
        max_cost=float(arr.max()),
    )
