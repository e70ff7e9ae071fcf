"""Hot numeric kernels: per-meta-atom cascade sums and steering grid scans.

Each kernel has a pure-numpy implementation and a numba ``@njit`` twin.
The numba path is used by default; set the environment variable
``IRSEC_PURE_NUMPY=1`` (or run without numba installed) to force the
numpy fallback. ``benchmarks/bench_kernels.py`` compares the two.
"""

import os

import numpy as np


def _cascade_gains_numpy(rx, phase, tx):
    """Batched triple product sum_l conj(rx[i,l]) * phase[i,l] * tx[i,l].

    rx, phase, tx: (B, L) complex arrays. Returns (B,) complex.
    """
    return np.einsum("il,il,il->i", np.conj(rx), phase, tx)


def _steering_gain_grid_numpy(rx, tx, q_grid):
    """|sum_l conj(rx[l]) * e^{j pi q (l - (L-1)/2)} * tx[l]| per grid point.

    rx, tx: (L,) complex; q_grid: (G,) real. Returns (G,) real magnitudes.
    """
    idx = np.arange(rx.shape[0]) - 0.5 * (rx.shape[0] - 1)
    weights = np.conj(rx) * tx
    phases = np.exp(1j * np.pi * np.outer(q_grid, idx))
    return np.abs(phases @ weights)


try:
    if os.environ.get("IRSEC_PURE_NUMPY", "0") not in ("", "0"):
        raise ImportError("numba disabled via IRSEC_PURE_NUMPY")
    from numba import njit

    @njit(cache=True)
    def _cascade_gains_numba(rx, phase, tx):  # pragma: no cover - jitted
        b, n = rx.shape
        out = np.empty(b, np.complex128)
        for i in range(b):
            acc = 0.0 + 0.0j
            for l in range(n):
                acc += np.conj(rx[i, l]) * phase[i, l] * tx[i, l]
            out[i] = acc
        return out

    @njit(cache=True)
    def _steering_gain_grid_numba(rx, tx, q_grid):  # pragma: no cover - jitted
        n = rx.shape[0]
        g = q_grid.shape[0]
        half = 0.5 * (n - 1)
        weights = np.empty(n, np.complex128)
        for l in range(n):
            weights[l] = np.conj(rx[l]) * tx[l]
        out = np.empty(g, np.float64)
        for i in range(g):
            acc = 0.0 + 0.0j
            w = np.pi * q_grid[i]
            for l in range(n):
                ang = w * (l - half)
                acc += weights[l] * complex(np.cos(ang), np.sin(ang))
            out[i] = abs(acc)
        return out

    cascade_gains = _cascade_gains_numba
    steering_gain_grid = _steering_gain_grid_numba
    USING_NUMBA = True
except ImportError:
    cascade_gains = _cascade_gains_numpy
    steering_gain_grid = _steering_gain_grid_numpy
    USING_NUMBA = False
