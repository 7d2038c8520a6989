"""Benchmark the jit step kernel against the pure-numpy fallback.

Run as ``python -m firecell.bench``. Both paths receive identical
pre-drawn uniforms each step, so besides timing them this doubles as a
bit-exactness check on a developed fire front.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import _kernels
from .dynamics import CellState, FireParams, alpha_by_slot, forest_step, ignite_center, make_forest
from .grid import GridKind, build_grid


def _developed_state(kind: GridKind, n: int, params: FireParams, warmup: int, seed: int):
    topo = build_grid(kind, n)
    forest = ignite_center(make_forest(topo))
    rng = np.random.default_rng(seed)
    controls = np.zeros((n, n), dtype=np.int8)
    for _ in range(warmup):
        forest = forest_step(forest, controls, (0.0, 0.0), params, rng)
    return topo, forest, controls


def _time_impl(impl, cells, controls, draws_per_step, alphas, params, offsets, steps):
    start = time.perf_counter()
    out = cells
    for s in range(steps):
        out = impl(cells, controls, draws_per_step[s], alphas, params.beta, params.zeta, offsets)
    elapsed = time.perf_counter() - start
    return out, elapsed


def run_bench(kind: GridKind, n: int, steps: int, warmup: int, seed: int) -> None:
    params = FireParams(alpha0=0.58, alpha_wind=1.0, beta=0.1, zeta=0.5)
    topo, forest, controls = _developed_state(kind, n, params, warmup, seed)
    n_afire = int((forest.cells == int(CellState.AFIRE)).sum())
    print(f"{kind.value} {n}x{n}, {steps} steps, {n_afire} cells afire after warmup")

    alphas = alpha_by_slot(topo, (0.0, 0.0), params)
    rng = np.random.default_rng(seed + 1)
    draws = rng.random((steps, n, n))

    cells = forest.cells
    ref, t_np = _time_impl(
        _kernels.step_cells_numpy, cells, controls, draws, alphas, params, topo.offsets, steps
    )
    rate_np = steps * n * n / t_np / 1e6
    print(f"numpy   : {t_np:8.3f} s  {rate_np:9.2f} Mcell/s")

    if _kernels.step_cells_numba is None:
        print("numba   : unavailable (not installed or FIRECELL_NO_NUMBA set)")
        return
    # first call compiles; keep it out of the timing
    _kernels.step_cells_numba(cells, controls, draws[0], alphas, params.beta, params.zeta, topo.offsets)
    jit_out, t_nb = _time_impl(
        _kernels.step_cells_numba, cells, controls, draws, alphas, params, topo.offsets, steps
    )
    rate_nb = steps * n * n / t_nb / 1e6
    print(f"numba   : {t_nb:8.3f} s  {rate_nb:9.2f} Mcell/s")
    print(f"speedup : {t_np / t_nb:.1f}x")
    print(f"outputs bit-identical: {np.array_equal(ref, jit_out)}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", choices=["rectangular", "hexagonal"], default="rectangular")
    parser.add_argument("--n", type=int, default=200)
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--warmup", type=int, default=40, help="macro-steps used to develop a front")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    run_bench(GridKind(args.grid), args.n, args.steps, args.warmup, args.seed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
