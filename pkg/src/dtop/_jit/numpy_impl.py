"""Pure-numpy reference versions of the hot kernels."""

import math

import numpy as np


def toeplitz_fill(band, offset, n):
    """Return the n x n matrix with ``out[i, j] = band[i - j + offset]``.

    Entries whose band index falls outside ``band`` are zero.
    """
    idx = np.arange(n)[:, None] - np.arange(n)[None, :] + offset
    ok = (idx >= 0) & (idx < band.shape[0])
    out = np.zeros((n, n), dtype=np.complex128)
    out[ok] = band[idx[ok]]
    return out


def diagonal_residual(a):
    """Largest ``|a[i, j] - a[i+1, j+1]|`` and the (0-based) place it occurs."""
    n = a.shape[0]
    if n < 2:
        return 0.0, 0, 0
    diff = np.abs(a[:-1, :-1] - a[1:, 1:])
    flat = int(np.argmax(diff))
    i, j = divmod(flat, n - 1)
    return float(diff[i, j]), i, j


def rotation_average(a, k, m):
    """Average ``exp(-ik t) R(-t) A R(t)`` over the m-th roots of unity.

    ``R(t)`` multiplies the n-th basis monomial by ``exp(-i (n+1) t)``, so the
    entry (i, j) picks up ``exp(i (i - j) t)``.  Phases are taken from an
    exact table indexed modulo ``m``.
    """
    n = a.shape[0]
    table = np.exp(2j * np.pi * np.arange(m) / m)
    shift = (np.arange(n)[:, None] - np.arange(n)[None, :] - k) % m
    acc = np.zeros((n, n), dtype=np.complex128)
    for step in range(m):
        acc += table[(shift * step) % m] * a
    return acc / m


def compensated_dot(values, weights):
    """Correctly rounded ``sum(weights * values)`` for complex values."""
    prod = np.asarray(weights, dtype=np.float64) * np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(prod.real), math.fsum(prod.imag))


def power_iteration(b, v0, iters, tol):
    """Largest singular value of ``b`` by the power method on ``C = b^H b``.

    Each step squares the normalized ``C``, so after ``t`` steps ``C^(2^t) v0``
    is formed; this keeps clustered top singular values (common for Toeplitz
    truncations) from stalling the iteration.  Stops once the Rayleigh
    quotient changes by at most ``tol`` relatively.

    Returns ``(sigma, iterations, converged)``.
    """
    c = b.conj().T @ b
    lam = float(np.vdot(v0, c @ v0).real / np.vdot(v0, v0).real)
    for it in range(1, iters + 1):
        c = c @ c
        scale = np.max(np.abs(c))
        if scale == 0.0:
            return 0.0, it, True
        c = c / scale
        v = c @ v0
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return 0.0, it, True
        v = v / nv
        bv = b @ v
        lam_new = float(np.vdot(bv, bv).real)
        if abs(lam_new - lam) <= tol * lam_new:
            return math.sqrt(lam_new), it, True
        lam = lam_new
    return math.sqrt(lam), iters, False
