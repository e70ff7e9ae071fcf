import os
import subprocess
import sys

import numpy as np
import pytest

from irsec import kernels
from irsec.kernels import _cascade_gains_numpy, _steering_gain_grid_numpy


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_cascade_gains_matches_direct_sum():
    rng = np.random.default_rng(0)
    rx, phase, tx = (crandn(rng, 7, 33) for _ in range(3))
    out = kernels.cascade_gains(rx, phase, tx)
    oracle = np.array([np.sum(np.conj(rx[i]) * phase[i] * tx[i]) for i in range(7)])
    assert np.allclose(out, oracle, rtol=1e-12)


@pytest.mark.skipif(not kernels.USING_NUMBA, reason="numba path disabled")
def test_numba_and_numpy_paths_agree():
    rng = np.random.default_rng(1)
    rx, phase, tx = (crandn(rng, 5, 128) for _ in range(3))
    assert np.allclose(kernels.cascade_gains(rx, phase, tx),
                       _cascade_gains_numpy(rx, phase, tx), rtol=1e-12)
    r, t = crandn(rng, 64), crandn(rng, 64)
    grid = np.linspace(-2, 2, 801)
    assert np.allclose(kernels.steering_gain_grid(r, t, grid),
                       _steering_gain_grid_numpy(r, t, grid), rtol=1e-10)


def test_steering_gain_grid_matches_phase_profile():
    from irsec.channel import phase_profile

    rng = np.random.default_rng(2)
    rx, tx = crandn(rng, 16), crandn(rng, 16)
    grid = np.array([-1.5, -0.2, 0.0, 0.7])
    out = kernels.steering_gain_grid(rx, tx, grid)
    oracle = [abs(np.vdot(rx, phase_profile(q, 0.0, 16) * tx)) for q in grid]
    assert np.allclose(out, oracle, rtol=1e-12)


def test_env_flag_selects_numpy_path():
    env = dict(os.environ, IRSEC_PURE_NUMPY="1")
    code = "import irsec.kernels as k; print(k.USING_NUMBA)"
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
