"""Hot inner loops of the synchronous forest update.

Two interchangeable implementations live here: a numba ``@njit`` kernel
and a vectorised pure-numpy fallback. Both consume a pre-drawn array of
uniforms (one per cell; entries for absorbing cells are ignored), read
only the frozen pre-step state, and perform floating-point operations in
the same order, so their outputs are bit-identical. Set the environment
variable ``FIRECELL_NO_NUMBA=1`` before import to force the numpy path;
the same fallback engages automatically when numba is unavailable.
"""

from __future__ import annotations

import os

import numpy as np

HEALTHY = 0
AFIRE = 1
BURNT = 2
EXT = 3
NONFLAM = 4

NOP = 0
RETARDANT = 1


def _numba_requested() -> bool:
    return os.environ.get("FIRECELL_NO_NUMBA", "").strip().lower() not in (
        "1", "true", "yes", "on",
    )


def step_cells_numpy(cells, controls, draws, alphas, beta, zeta, offsets):
    """One synchronous update of the whole cell array (numpy path).

    cells, controls : (n, n) int8 state and control arrays (pre-step)
    draws           : (n, n) float64 uniforms, one consumed per live cell
    alphas          : (K,) per-slot non-ignition likelihoods for the wind
    offsets         : (K, 2) neighbour offsets in slot order
    """
    n = cells.shape[0]
    out = cells.copy()
    afire = cells == AFIRE

    # Product of alpha over directions pointing at burning neighbours,
    # accumulated in ascending slot order to match the jit kernel bit for bit.
    prod = np.ones((n, n), dtype=np.float64)
    for k in range(offsets.shape[0]):
        dr, dc = int(offsets[k, 0]), int(offsets[k, 1])
        mask = np.zeros((n, n), dtype=bool)
        src_r = slice(max(dr, 0), n + min(dr, 0))
        src_c = slice(max(dc, 0), n + min(dc, 0))
        dst_r = slice(max(-dr, 0), n + min(-dr, 0))
        dst_c = slice(max(-dc, 0), n + min(-dc, 0))
        mask[dst_r, dst_c] = afire[src_r, src_c]
        prod[mask] *= alphas[k]

    healthy = cells == HEALTHY
    p_ha = 1.0 - prod
    out[healthy & (draws < p_ha)] = AFIRE

    p_ae = np.where(controls == RETARDANT, zeta, 0.0)
    p_ab = np.minimum(beta, 1.0 - p_ae)
    to_burnt = afire & (draws < p_ab)
    to_ext = afire & ~to_burnt & (draws < p_ab + p_ae)
    out[to_burnt] = BURNT
    out[to_ext] = EXT
    return out


def _step_cells_loop(cells, controls, draws, alphas, beta, zeta, offsets):
    n = cells.shape[0]
    n_slots = offsets.shape[0]
    out = np.empty_like(cells)
    for r in range(n):
        for c in range(n):
            state = cells[r, c]
            if state == HEALTHY:
                prod = 1.0
                for k in range(n_slots):
                    rr = r + offsets[k, 0]
                    cc = c + offsets[k, 1]
                    if 0 <= rr < n and 0 <= cc < n and cells[rr, cc] == AFIRE:
                        prod *= alphas[k]
                p_ha = 1.0 - prod
                out[r, c] = AFIRE if draws[r, c] < p_ha else HEALTHY
            elif state == AFIRE:
                p_ae = zeta if controls[r, c] == RETARDANT else 0.0
                p_ab = min(beta, 1.0 - p_ae)
                d = draws[r, c]
                if d < p_ab:
                    out[r, c] = BURNT
                elif d < p_ab + p_ae:
                    out[r, c] = EXT
                else:
                    out[r, c] = AFIRE
            else:
                out[r, c] = state
    return out


step_cells_numba = None
if _numba_requested():
    try:
        from numba import njit

        step_cells_numba = njit(cache=True)(_step_cells_loop)
    except ImportError:
        step_cells_numba = None

USING_NUMBA = step_cells_numba is not None

step_cells = step_cells_numba if USING_NUMBA else step_cells_numpy
