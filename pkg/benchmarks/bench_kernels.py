"""Time the numba and numpy versions of each hot kernel on the same inputs.

    python benchmarks/bench_kernels.py [--repeat R] [--n N]

Prints one row per kernel with the best-of-R time for each backend, the
speedup and the largest difference between the two outputs.
"""

import argparse
import time

import numpy as np

from dtop._jit import numpy_impl

try:
    from dtop._jit import numba_impl
except ImportError:  # numba not installed
    numba_impl = None


def _best(fn, args, repeat):
    fn(*args)  # compile / warm caches
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def _gap(a, b):
    if isinstance(a, tuple):
        return max(_gap(x, y) for x, y in zip(a, b))
    return float(np.max(np.abs(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))))


def cases(n, rng):
    band = rng.normal(size=25) + 1j * rng.normal(size=25)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    vals = rng.normal(size=200_000) + 1j * rng.normal(size=200_000)
    w = rng.random(200_000)
    toeplitz = numpy_impl.toeplitz_fill(band, 12, n)
    scale = np.sqrt(np.arange(1, n + 1))
    b = toeplitz * (scale[:, None] / scale[None, :])
    v0 = np.ones(n, dtype=np.complex128)
    return [
        ("toeplitz_fill", (band, 12, n)),
        ("diagonal_residual", (a,)),
        ("rotation_average", (a[:32, :32].copy(), 1, 80)),
        ("compensated_dot", (vals, w)),
        ("power_iteration", (b, v0, 200, 1e-12)),
    ]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--n", type=int, default=128, help="matrix size")
    args = p.parse_args(argv)
    if numba_impl is None:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>9}{'max diff':>11}")
    for name, case in cases(args.n, rng):
        t_np, out_np = _best(getattr(numpy_impl, name), case, args.repeat)
        t_nb, out_nb = _best(getattr(numba_impl, name), case, args.repeat)
        print(
            f"{name:<20}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}"
            f"{t_np / t_nb:>9.2f}{_gap(out_np, out_nb):>11.2e}"
        )


if __name__ == "__main__":
    main()
