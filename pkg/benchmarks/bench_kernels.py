"""Benchmark the numba kernels against their pure-numpy twins.

Run: python benchmarks/bench_kernels.py
The same comparison drives the whole simulator through the env flag:
IRSEC_PURE_NUMPY=1 selects the numpy path everywhere.
"""

import time

import numpy as np

from irsec import kernels
from irsec.kernels import _cascade_gains_numpy, _steering_gain_grid_numpy


def timeit(fn, *args, repeat=30):
    fn(*args)  # warm-up (and JIT compile for the numba path)
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_cascade(side, batch):
    rng = np.random.default_rng(0)
    shape = (batch, side * side)
    rx = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    tx = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi, shape))
    return (timeit(kernels._cascade_gains_numba, rx, phase, tx)
            if kernels.USING_NUMBA else None,
            timeit(_cascade_gains_numpy, rx, phase, tx))


def bench_grid(side, points):
    rng = np.random.default_rng(1)
    rx = rng.standard_normal(side) + 1j * rng.standard_normal(side)
    tx = rng.standard_normal(side) + 1j * rng.standard_normal(side)
    grid = np.linspace(-2, 2, points)
    return (timeit(kernels._steering_gain_grid_numba, rx, tx, grid)
            if kernels.USING_NUMBA else None,
            timeit(_steering_gain_grid_numpy, rx, tx, grid))


def row(name, jit, plain):
    if jit is None:
        print(f"{name:34s} numba: unavailable   numpy: {plain*1e3:8.3f} ms")
    else:
        print(f"{name:34s} numba: {jit*1e3:8.3f} ms  numpy: {plain*1e3:8.3f} ms  "
              f"speedup: {plain/jit:5.2f}x")


def main():
    print(f"numba JIT active: {kernels.USING_NUMBA}")
    for side, batch in ((64, 80), (128, 80), (256, 80)):
        jit, plain = bench_cascade(side, batch)
        row(f"cascade_gains  L={side:<3d} B={batch}", jit, plain)
    for side, points in ((64, 4001), (256, 4001), (1024, 4001)):
        jit, plain = bench_grid(side, points)
        row(f"steering_grid  L={side:<4d} G={points}", jit, plain)


if __name__ == "__main__":
    main()
