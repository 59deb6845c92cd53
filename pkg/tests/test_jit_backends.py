import os
import subprocess
import sys

import numpy as np
import pytest

from dtop import _jit
from dtop._jit import numpy_impl

nb = pytest.importorskip("dtop._jit.numba_impl")


def _complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


@pytest.mark.parametrize("n,offset", [(1, 0), (5, 2), (17, 0), (40, 12)])
def test_toeplitz_fill(n, offset):
    band = _complex(np.random.default_rng(n), 2 * offset + 3)
    assert np.array_equal(nb.toeplitz_fill(band, offset, n), numpy_impl.toeplitz_fill(band, offset, n))


@pytest.mark.parametrize("n", [1, 2, 9, 33])
def test_diagonal_residual(n):
    a = _complex(np.random.default_rng(n), n, n)
    r1, i1, j1 = nb.diagonal_residual(a)
    r2, i2, j2 = numpy_impl.diagonal_residual(a)
    assert (i1, j1) == (i2, j2)
    assert abs(r1 - r2) <= 4e-16 * max(1.0, r2)


@pytest.mark.parametrize("k", [-3, 0, 1, 7])
def test_rotation_average(k):
    a = _complex(np.random.default_rng(5), 12, 12)
    diff = nb.rotation_average(a, k, 30) - numpy_impl.rotation_average(a, k, 30)
    assert np.max(np.abs(diff)) <= 1e-14


def test_compensated_dot():
    rng = np.random.default_rng(2)
    vals = _complex(rng, 5000) * 10.0 ** rng.integers(-8, 8, 5000)
    w = rng.random(5000)
    a, b = nb.compensated_dot(vals, w), numpy_impl.compensated_dot(vals, w)
    assert abs(a - b) <= 1e-14 * max(1.0, abs(b))


def test_compensated_dot_cancellation():
    vals = np.array([1e16, 1.0, -1e16], dtype=np.complex128)
    w = np.ones(3)
    assert nb.compensated_dot(vals, w) == numpy_impl.compensated_dot(vals, w) == 1.0


@pytest.mark.parametrize("n", [1, 6, 40])
def test_power_iteration(n):
    rng = np.random.default_rng(n)
    b = _complex(rng, n, n)
    v0 = np.ones(n, dtype=np.complex128)
    s, _, ok = nb.power_iteration(b, v0, 200, 1e-12)
    ref = np.linalg.norm(b, 2)
    assert ok and abs(s - ref) <= 1e-10 * ref


def test_power_iteration_clustered():
    # singular values sqrt(n/(n+1)) crowd together near 1
    n = 128
    b = np.diag(np.sqrt(np.arange(1, n) / np.arange(2, n + 1)), 1).astype(np.complex128)
    s, it, ok = nb.power_iteration(b, np.ones(n, dtype=np.complex128), 200, 1e-12)
    assert ok and it < 40
    assert abs(s - np.linalg.norm(b, 2)) <= 1e-12


def test_power_iteration_zero():
    z = np.zeros((4, 4), dtype=np.complex128)
    assert nb.power_iteration(z, np.ones(4, dtype=np.complex128), 10, 1e-12)[0] == 0.0


def test_power_iteration_not_converged():
    b = _complex(np.random.default_rng(1), 30, 30)
    s, it, ok = nb.power_iteration(b, np.ones(30, dtype=np.complex128), 1, 1e-15)
    assert not ok and it == 1 and s > 0


def _backend_under(env):
    proc = subprocess.run(
        [sys.executable, "-c", "import dtop; print(dtop.BACKEND)"],
        capture_output=True,
        text=True,
        env={**os.environ, **env},
        check=True,
    )
    return proc.stdout.strip()


def test_env_flag_selects_numpy():
    assert _backend_under({"DTOP_DISABLE_NUMBA": "1"}) == "numpy"
    assert _backend_under({"DTOP_DISABLE_NUMBA": "0", "NUMBA_DISABLE_JIT": "0"}) == "numba"


def test_active_backend_consistent():
    assert _jit.impl is (numpy_impl if _jit.BACKEND == "numpy" else _jit.numba_impl)
