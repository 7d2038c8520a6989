import tracemalloc

import numpy as np
import pytest

from firecell.config import Config, ConfigError
from firecell.dynamics import FireParams, forest_step, ignite_center, make_forest
from firecell.engine import (
    TERM_FIRE_OUT,
    TERM_TAU,
    episode_rng,
    run_batch,
    run_episode,
)
from firecell.grid import GridKind, build_grid


def fig2_config(**kw):
    base = dict(
        grid=GridKind.HEXAGONAL, n=42, tau=16,
        alpha0=0.7, alpha_wind=1.0, beta=0.6, zeta=1.0,
        agents=0, seed=0,
    )
    base.update(kw)
    return Config(**base)


class TestRunEpisode:
    def test_sixteen_step_reference_run(self):
        log = run_episode(fig2_config())
        assert len(log.records) == 17  # initial state plus 16 forest updates
        assert [r.t for r in log.records] == list(range(17))
        for rec in log.records:
            assert rec.census.total == 42 * 42

    def test_deterministic_full_burn(self):
        # alpha0=0 spreads with certainty and beta=1 burns down with
        # certainty, so every seed ends fully burnt with no fire left
        cfg = Config(
            grid=GridKind.RECTANGULAR, n=5, tau=0,
            alpha0=0.0, alpha_wind=1.0, beta=1.0, zeta=0.0,
        )
        for seed in range(10):
            log = run_episode(cfg, seed=seed)
            final = log.records[-1].census
            assert log.termination == TERM_FIRE_OUT
            assert final.n_afire == 0
            assert final.n_healthy == 0
            assert final.n_burnt == 25
            assert log.length == 3  # rings burn outward deterministically

    def test_same_seed_identical_logs(self):
        cfg = fig2_config(n=12, tau=8)
        assert run_episode(cfg, seed=3) == run_episode(cfg, seed=3)

    def test_stopping_soundness(self):
        # tau large enough that the fire dies first: reason must say so
        cfg = Config(n=7, tau=60, alpha0=0.5, beta=0.9, seed=1)
        log = run_episode(cfg)
        assert log.records[-1].census.n_afire == 0
        assert log.termination == TERM_FIRE_OUT
        assert len(log.records) == 61

        cfg2 = Config(n=15, tau=3, alpha0=0.5, beta=0.2, seed=1)
        log2 = run_episode(cfg2)
        assert log2.records[-1].census.n_afire > 0
        assert log2.termination == TERM_TAU

    def test_time_increments_by_one(self):
        log = run_episode(fig2_config(n=10, tau=10))
        ts = [r.t for r in log.records]
        assert ts == sorted(ts)
        assert all(b - a == 1 for a, b in zip(ts, ts[1:]))

    def test_on_step_called_for_initial_and_each_step(self):
        seen = []
        run_episode(fig2_config(n=8, tau=5), on_step=lambda f, a: seen.append(f.t))
        assert seen == [0, 1, 2, 3, 4, 5]

    def test_invalid_config_rejected_before_stepping(self):
        cfg = Config(n=0)
        with pytest.raises(ConfigError):
            run_episode(cfg)

    def test_negative_seed_rejected(self):
        with pytest.raises(ConfigError):
            run_episode(fig2_config(), seed=-1)

    def test_max_steps_guard(self):
        # beta=0, zeta=0: the fire can never go out; the cap must bite
        cfg = Config(n=5, tau=0, alpha0=0.5, beta=0.0, zeta=0.0)
        log = run_episode(cfg, max_steps=20)
        assert log.records[-1].t == 20
        assert log.termination == TERM_TAU

    def test_agent_episode_reproducible(self):
        cfg = Config(
            grid=GridKind.HEXAGONAL, n=15, tau=12, agents=4,
            alpha0=0.5, beta=0.6, zeta=1.0, seed=9,
        )
        assert run_episode(cfg) == run_episode(cfg)


class TestSeedMixing:
    def test_master_seed_changes_stream(self):
        a = episode_rng(Config(seed=0), 5).random()
        b = episode_rng(Config(seed=1), 5).random()
        assert a != b

    def test_direct_run_equals_batch_member(self):
        cfg = fig2_config(n=10, tau=6)
        report = run_batch(cfg, [4, 2, 7])
        direct = run_episode(cfg, seed=2)
        assert report.logs[1] == direct


class TestRunBatch:
    def test_single_seed_mean(self):
        cfg = fig2_config(n=9, tau=5)
        report = run_batch(cfg, [3])
        assert report.mean_cost == report.final_costs[0]
        assert report.std_cost == 0.0
        assert report.episode_lengths == (5,)

    def test_repeated_seed_zero_variance(self):
        cfg = fig2_config(n=9, tau=5)
        report = run_batch(cfg, [8] * 4)
        assert report.std_cost == 0.0
        assert len(set(report.final_costs)) == 1

    def test_permutation_permutes_results(self):
        cfg = fig2_config(n=9, tau=5, seed=2)
        fwd = run_batch(cfg, [1, 2, 3, 4])
        rev = run_batch(cfg, [4, 3, 2, 1])
        assert fwd.final_costs == tuple(reversed(rev.final_costs))
        assert fwd.logs == tuple(reversed(rev.logs))
        assert fwd.mean_cost == pytest.approx(rev.mean_cost)

    def test_empty_seed_list_rejected(self):
        with pytest.raises(ValueError):
            run_batch(fig2_config(), [])

    def test_statistics_recomputable(self):
        cfg = fig2_config(n=9, tau=4)
        report = run_batch(cfg, list(range(6)))
        costs = np.array(report.final_costs)
        assert report.mean_cost == pytest.approx(costs.mean())
        assert report.std_cost == pytest.approx(costs.std(ddof=1))
        assert report.min_cost == costs.min()
        assert report.max_cost == costs.max()


class TestThroughput:
    def test_steady_memory_over_1000_steps(self):
        # the no-agent episode step must not accumulate allocations
        topo = build_grid(GridKind.RECTANGULAR, 100)
        forest = ignite_center(make_forest(topo))
        params = FireParams(0.7, 1.0, 0.6, 0.0)
        controls = np.zeros((100, 100), dtype=np.int8)
        rng = np.random.default_rng(0)
        for _ in range(100):  # warmup: numba compile, numpy buffers
            forest = forest_step(forest, controls, (0.0, 0.0), params, rng)
        tracemalloc.start()
        baseline = tracemalloc.get_traced_memory()[0]
        for _ in range(900):
            forest = forest_step(forest, controls, (0.0, 0.0), params, rng)
        current = tracemalloc.get_traced_memory()[0]
        tracemalloc.stop()
        assert current - baseline < 256 * 1024
