"""Toeplitz operators on D0 and their truncations.

Matrices are indexed by the monomial basis ``z^1, ..., z^N``.  In the
*orthogonal* basis entry ``(i, j)`` is the coefficient of ``z^i`` in
``T z^j``; the *orthonormal* basis uses ``z^n / sqrt(n)`` instead, where the
same operator has entry ``sqrt(i/j)`` times larger.  All public routines
take and return 1-based indices in messages, 0-based positions in arrays.
"""

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import _jit
from ._config import default_tol
from .errors import BoundViolationError, ConvergenceError, NotToeplitzError
from .kernels import AnalyticVector
from .symbols import (
    HarmonicSymbol,
    boundary_product,
    is_antiholomorphic,
    is_holomorphic,
    z_symbol,
    zbar_symbol,
)

ORTHOGONAL = "orthogonal"
ORTHONORMAL = "orthonormal"


def _basis_scale(n):
    # sqrt(i / j) for 1-based i (rows), j (cols)
    s = np.sqrt(np.arange(1, n + 1, dtype=np.float64))
    return s[:, None] / s[None, :]


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """N x N compression of an operator to ``span{z^1, ..., z^N}``."""

    entries: np.ndarray
    basis: str = ORTHOGONAL

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"entries must be a square matrix, got shape {arr.shape}")
        if self.basis not in (ORTHOGONAL, ORTHONORMAL):
            raise ValueError(f"unknown basis {self.basis!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def N(self):
        return self.entries.shape[0]

    def to_orthonormal(self):
        if self.basis == ORTHONORMAL:
            return self
        return TruncatedOperator(self.entries * _basis_scale(self.N), ORTHONORMAL)

    def to_orthogonal(self):
        if self.basis == ORTHOGONAL:
            return self
        return TruncatedOperator(self.entries / _basis_scale(self.N), ORTHOGONAL)

    def in_basis(self, basis):
        return self.to_orthogonal() if basis == ORTHOGONAL else self.to_orthonormal()

    def _check(self, other):
        if not isinstance(other, TruncatedOperator):
            raise TypeError(f"expected TruncatedOperator, got {type(other).__name__}")
        if other.N != self.N:
            raise ValueError(f"dimension mismatch: {self.N} vs {other.N}")
        return other.in_basis(self.basis)

    def __matmul__(self, other):
        other = self._check(other)
        return TruncatedOperator(self.entries @ other.entries, self.basis)

    def __add__(self, other):
        other = self._check(other)
        return TruncatedOperator(self.entries + other.entries, self.basis)

    def __sub__(self, other):
        other = self._check(other)
        return TruncatedOperator(self.entries - other.entries, self.basis)

    def __mul__(self, scalar):
        return TruncatedOperator(self.entries * complex(scalar), self.basis)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TruncatedOperator(N={self.N}, basis={self.basis!r})"


@dataclass(frozen=True)
class ToeplitzOracle:
    """Entry access to an operator on D0.

    ``entry(i, j)`` must return ``<T z^j, z^i> / ||z^i||^2`` (1-based) and be
    deterministic; ``norm_bound`` is an upper bound for ``||T||``.
    """

    entry: Callable[[int, int], complex]
    norm_bound: float

    def __post_init__(self):
        if not self.norm_bound >= 0.0:
            raise ValueError(f"norm_bound must be >= 0, got {self.norm_bound!r}")

    @classmethod
    def from_matrix(cls, a, norm_bound=None):
        """Wrap a truncated matrix; the norm defaults to :func:`operator_norm`."""
        if not isinstance(a, TruncatedOperator):
            a = TruncatedOperator(a)
        entries = a.to_orthogonal().entries
        n = a.N
        if norm_bound is None:
            norm_bound = operator_norm(a)

        def entry(i, j):
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexError(f"entry ({i}, {j}) outside the {n}x{n} truncation")
            return complex(entries[i - 1, j - 1])

        return cls(entry, float(norm_bound))

    @classmethod
    def from_symbol(cls, phi, norm_bound):
        """Exact oracle of ``T_phi`` (no truncation)."""
        return cls(lambda i, j: phi.coeff(i - j), float(norm_bound))

    def matrix(self, n):
        """The n x n truncation built from ``entry``."""
        out = np.empty((n, n), dtype=np.complex128)
        for i in range(n):
            for j in range(n):
                out[i, j] = self.entry(i + 1, j + 1)
        return TruncatedOperator(out)


def toeplitz_matrix(phi, n):
    """Orthogonal-basis truncation of ``T_phi``: entry ``(i, j) = c_{i-j}``."""
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    band, offset = phi.band()
    return TruncatedOperator(_jit.toeplitz_fill(band, offset, int(n)))


def apply(phi, f):
    """Exact ``T_phi f``: coefficient ``i`` is ``sum_j c_{i-j} a_j`` for ``i >= 1``."""
    if phi.is_zero() or f.degree == 0:
        return AnalyticVector.zero()
    band, q = phi.band()
    return AnalyticVector(np.convolve(band, f.coeffs)[q:])


def adjoint_apply(phi, f):
    """Exact ``T_phi^* f`` with respect to the D0 inner product.

    ``[T^*]_{ij} = (j/i) conj([T]_{ji})``, i.e. ``T_phi^* = D^{-1} T_{conj phi} D``
    with ``D = diag(n)``.
    """
    if phi.is_zero() or f.degree == 0:
        return AnalyticVector.zero()
    weighted = AnalyticVector(f.coeffs * np.arange(1, f.degree + 1))
    out = apply(phi.conj(), weighted)
    return AnalyticVector(out.coeffs / np.arange(1, out.degree + 1))


def adjoint(a):
    """Adjoint in the D0 inner product, returned in the basis of ``a``."""
    if a.basis == ORTHONORMAL:
        return TruncatedOperator(a.entries.conj().T, ORTHONORMAL)
    n = a.N
    idx = np.arange(1, n + 1, dtype=np.float64)
    ratio = idx[None, :] / idx[:, None]  # j / i
    return TruncatedOperator(ratio * a.entries.conj().T)


def rank_one(u, v, n):
    """Matrix of ``(u (x) v) f = <f, v> u`` on the N-truncation (orthogonal basis)."""
    j = np.arange(1, n + 1)
    return TruncatedOperator(np.outer(u.padded(n), j * np.conj(v.padded(n))))


def brown_halmos_worst(a):
    """Largest diagonal defect ``|A[i,j] - A[i+1,j+1]|`` and its 1-based ``(i, j)``."""
    entries = np.ascontiguousarray(a.to_orthogonal().entries)
    res, i, j = _jit.diagonal_residual(entries)
    return float(res), (int(i) + 1, int(j) + 1)


def brown_halmos_residual(a):
    """Max over ``1 <= i, j <= N-1`` of ``|A[i,j] - A[i+1,j+1]|`` (orthogonal basis).

    Zero exactly when the truncation is consistent with ``T_zbar A T_z = A``.
    """
    return brown_halmos_worst(a)[0]


def recover_symbol(oracle, k, tol=None, bound_tol=1e-6):
    """Read the symbol of a Toeplitz operator off its first row and column.

    Parameters
    ----------
    oracle : ToeplitzOracle
    k : int
        Largest degree to recover; ``c_0..c_K`` and ``c_{-1}..c_{-K}``.
    tol : float, optional
        Allowed Brown-Halmos residual on the ``(K+1)``-truncation.  Defaults
        to ``DTOP_TOL`` / 1e-12.
    bound_tol : float
        Absolute slack on the coefficient bounds
        ``|c_j| sqrt(j+1) <= ||T||`` and ``|c_{-j}| / sqrt(j+1) <= ||T||``.

    Raises
    ------
    NotToeplitzError
        The truncation does not have constant diagonals.
    BoundViolationError
        A coefficient is too large for ``oracle.norm_bound``.
    """
    if k < 0:
        raise ValueError(f"K must be >= 0, got {k}")
    tol = default_tol() if tol is None else tol
    block = oracle.matrix(k + 1)
    res, where = brown_halmos_worst(block)
    if res > tol:
        raise NotToeplitzError(res, where, tol)

    m = block.entries
    limit = oracle.norm_bound + bound_tol
    coeffs = {}
    for j in range(k + 1):
        c = complex(m[j, 0])
        if abs(c) * math.sqrt(j + 1) > limit:
            raise BoundViolationError(j, abs(c), oracle.norm_bound / math.sqrt(j + 1))
        coeffs[j] = c
    for j in range(1, k + 1):
        c = complex(m[0, j])
        if abs(c) / math.sqrt(j + 1) > limit:
            raise BoundViolationError(-j, abs(c), oracle.norm_bound * math.sqrt(j + 1))
        coeffs[-j] = c
    return HarmonicSymbol.from_coeffs(coeffs)


def diagonal_part(a, k):
    """Keep only the entries with ``i - j = k``."""
    n = a.N
    mask = (np.arange(n)[:, None] - np.arange(n)[None, :]) == k
    return TruncatedOperator(np.where(mask, a.entries, 0), a.basis)


def homogeneous_part(a, k, m):
    """Degree-``k`` homogeneous part by averaging over the ``m``-th roots of unity.

    Computes ``(1/m) sum_t exp(-ik t) R(-t) A R(t)`` where ``R(t)`` rotates
    ``z^n`` by ``exp(-int)``.  For ``m > 2N`` the average is exact on the
    truncation and equals :func:`diagonal_part`.
    """
    if m <= 2 * a.N:
        raise ValueError(f"need M > 2N = {2 * a.N} root-of-unity samples, got {m}")
    out = _jit.rotation_average(np.ascontiguousarray(a.entries), int(k), int(m))
    return TruncatedOperator(out, a.basis)


def interior_window(n, *symbols):
    """Rows/cols ``1..N-d-2`` untouched by truncation, ``d`` the summed degrees."""
    return n - sum(s.degree for s in symbols) - 2


def _window_max(diff, w):
    if w < 1:
        return 0.0
    return float(np.max(np.abs(diff[:w, :w])))


class RankOneDefect(NamedTuple):
    lhs: TruncatedOperator
    rhs: TruncatedOperator
    residual: float


def rank_one_defect(psi, phi, n):
    """Both sides of ``T_zbar T_psi T_phi T_z - T_psi T_phi = u (x) v``.

    ``u = T_zbar T_psi z`` and ``v = T_z^* T_phi^* z`` are computed exactly;
    the left side uses N-truncated matrices, so the residual is taken over the
    interior window only.
    """
    w = interior_window(n, psi, phi)
    if w < 1:
        raise ValueError(
            f"N={n} too small: interior window is empty for degrees "
            f"{psi.degree} + {phi.degree}"
        )
    tz, tzb = toeplitz_matrix(z_symbol(), n), toeplitz_matrix(zbar_symbol(), n)
    prod = toeplitz_matrix(psi, n) @ toeplitz_matrix(phi, n)
    lhs = tzb @ prod @ tz - prod
    z = AnalyticVector.monomial(1)
    u = apply(zbar_symbol(), apply(psi, z))
    v = adjoint_apply(z_symbol(), adjoint_apply(phi, z))
    rhs = rank_one(u, v, n)
    return RankOneDefect(lhs, rhs, _window_max(lhs.entries - rhs.entries, w))


def shift_identity_residual(n):
    """Max entry of ``I - (T_z T_zbar + z (x) z)`` on the full N-truncation."""
    tz, tzb = toeplitz_matrix(z_symbol(), n), toeplitz_matrix(zbar_symbol(), n)
    z = AnalyticVector.monomial(1)
    rest = tz @ tzb + rank_one(z, z, n)
    return float(np.max(np.abs(np.eye(n) - rest.entries)))


def product_is_toeplitz(psi, phi):
    """Whether ``T_psi T_phi`` is a Toeplitz operator, and its symbol if so.

    True exactly when ``psi`` is antiholomorphic or ``phi`` is holomorphic;
    the symbol is then the boundary product.
    """
    if is_antiholomorphic(psi) or is_holomorphic(phi):
        return True, boundary_product(psi, phi)
    return False, None


def product_window_mismatch(psi, phi, n):
    """Max interior-window entry of ``T_psi T_phi - T_{boundary product}``."""
    tau = boundary_product(psi, phi)
    diff = (toeplitz_matrix(psi, n) @ toeplitz_matrix(phi, n)).entries - toeplitz_matrix(
        tau, n
    ).entries
    return _window_max(diff, interior_window(n, psi, phi))


def commute_witness(psi, phi, tol=None):
    """First ``(m, n)`` with ``c_phi(m) c_psi(-n) != c_psi(m) c_phi(-n)``, else None.

    Vanishing for all ``m, n >= 1`` is equivalent to ``T_psi T_phi = T_phi T_psi``.
    The comparison is relative to the larger side with tolerance ``tol``.
    """
    tol = default_tol() if tol is None else tol
    ms = sorted({k for k in list(psi.coeffs) + list(phi.coeffs) if k > 0})
    ns = sorted({-k for k in list(psi.coeffs) + list(phi.coeffs) if k < 0})
    for m in ms:
        for n in ns:
            left = phi.coeff(m) * psi.coeff(-n)
            right = psi.coeff(m) * phi.coeff(-n)
            if abs(left - right) > tol * max(1.0, abs(left), abs(right)):
                return m, n
    return None


def commute_check(psi, phi, tol=None):
    """True iff ``T_psi`` and ``T_phi`` commute (coefficient criterion)."""
    return commute_witness(psi, phi, tol) is None


def commutator_window(psi, phi, n):
    """Max interior-window entry of ``[T_psi, T_phi]`` on the N-truncation."""
    a, b = toeplitz_matrix(psi, n), toeplitz_matrix(phi, n)
    diff = (a @ b).entries - (b @ a).entries
    return _window_max(diff, interior_window(n, psi, phi))


def compactness_witness(phi, m_max):
    """``||T_phi^* e_m||`` for ``e_m = z^m / sqrt(m)``, ``m = 1..m_max``.

    Each value is computed from the exact adjoint action.  A nonzero symbol
    keeps these bounded away from zero, so the sequence certifies that
    ``T_phi`` is not compact.
    """
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    return [
        adjoint_apply(phi, AnalyticVector.monomial(m)).norm() / math.sqrt(m)
        for m in range(1, m_max + 1)
    ]


def _start_vector(n):
    # fixed, full-support start so results are reproducible
    idx = np.arange(n)
    return (1.0 + 0.5 * np.exp(2j * np.pi * 0.6180339887498949 * idx)) / np.sqrt(idx + 1.0)


def operator_norm(a, iters=200, tol=1e-12):
    """Largest singular value in the D0 norm, by power iteration.

    Power method on ``B^H B`` with ``B`` the orthonormal-basis matrix, the
    exponent doubling each step; stops once the Rayleigh quotient changes by
    less than ``tol`` relatively.

    Raises
    ------
    ConvergenceError
        If ``iters`` steps were not enough; carries the last estimate.
    """
    b = np.ascontiguousarray(a.to_orthonormal().entries)
    if not np.any(b):
        return 0.0
    sigma, it, ok = _jit.power_iteration(b, _start_vector(a.N), int(iters), float(tol))
    if not ok:
        raise ConvergenceError(sigma, it)
    return sigma


__all__ = [
    "ORTHOGONAL",
    "ORTHONORMAL",
    "RankOneDefect",
    "ToeplitzOracle",
    "TruncatedOperator",
    "adjoint",
    "adjoint_apply",
    "apply",
    "brown_halmos_residual",
    "brown_halmos_worst",
    "commutator_window",
    "commute_check",
    "commute_witness",
    "compactness_witness",
    "diagonal_part",
    "homogeneous_part",
    "interior_window",
    "operator_norm",
    "product_is_toeplitz",
    "product_window_mismatch",
    "rank_one",
    "rank_one_defect",
    "recover_symbol",
    "shift_identity_residual",
    "toeplitz_matrix",
]
