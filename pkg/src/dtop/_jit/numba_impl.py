"""numba ``@njit`` versions of the hot kernels (see :mod:`.numpy_impl`)."""

import numpy as np
from numba import njit

from . import numpy_impl


@njit(cache=True)
def toeplitz_fill(band, offset, n):
    out = np.zeros((n, n), dtype=np.complex128)
    nb = band.shape[0]
    for i in range(n):
        for j in range(n):
            idx = i - j + offset
            if 0 <= idx < nb:
                out[i, j] = band[idx]
    return out


@njit(cache=True)
def diagonal_residual(a):
    n = a.shape[0]
    best = 0.0
    bi = 0
    bj = 0
    # compare squared moduli; one abs at the end matches numpy's rounding
    for i in range(n - 1):
        for j in range(n - 1):
            d = a[i, j] - a[i + 1, j + 1]
            d2 = d.real * d.real + d.imag * d.imag
            if d2 > best:
                best = d2
                bi = i
                bj = j
    if n < 2:
        return 0.0, 0, 0
    return abs(a[bi, bj] - a[bi + 1, bj + 1]), bi, bj


@njit(cache=True)
def rotation_average(a, k, m):
    n = a.shape[0]
    table = np.empty(m, dtype=np.complex128)
    for r in range(m):
        table[r] = np.exp(2j * np.pi * r / m)
    acc = np.zeros((n, n), dtype=np.complex128)
    for step in range(m):
        for i in range(n):
            for j in range(n):
                s = (i - j - k) % m
                acc[i, j] += table[(s * step) % m] * a[i, j]
    return acc / m


@njit(cache=True)
def _neumaier(xs):
    s = 0.0
    c = 0.0
    for x in xs:
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


@njit(cache=True)
def _compensated_dot(values, weights):
    prod = weights * values
    return complex(_neumaier(prod.real), _neumaier(prod.imag))


def compensated_dot(values, weights):
    return _compensated_dot(
        np.ascontiguousarray(values, dtype=np.complex128),
        np.ascontiguousarray(weights, dtype=np.float64),
    )


# dense matmul is BLAS-bound; a jitted triple loop only loses to numpy here
power_iteration = numpy_impl.power_iteration
