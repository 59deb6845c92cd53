"""Harmonic trigonometric-polynomial symbols.

A symbol is ``phi(z) = sum_{k>=0} c_k z^k + sum_{k>=1} c_{-k} conj(z)^k``,
stored as a two-sided coefficient map ``k -> c_k``.  On the unit circle
``conj(z)^k = exp(-ik theta)``, so ``c_k`` is also the k-th Fourier
coefficient of the boundary values.
"""

import math
from types import MappingProxyType

import numpy as np


class HarmonicSymbol:
    """Immutable finitely supported harmonic symbol.

    Parameters
    ----------
    pos : mapping, optional
        ``k -> c_k`` for ``k >= 0`` (coefficient of ``z^k``; ``k = 0`` is the
        constant term).
    neg : mapping, optional
        ``k -> c_{-k}`` for ``k >= 1`` (coefficient of ``conj(z)^k``).

    Exact zeros are pruned, so the zero symbol has two empty maps.
    """

    __slots__ = ("_c",)

    def __init__(self, pos=None, neg=None):
        coeffs = {}
        for k, c in (pos or {}).items():
            if int(k) != k or k < 0:
                raise ValueError(f"holomorphic indices must be integers >= 0, got {k!r}")
            coeffs[int(k)] = complex(c)
        for k, c in (neg or {}).items():
            if int(k) != k or k < 1:
                raise ValueError(f"antiholomorphic indices must be integers >= 1, got {k!r}")
            coeffs[-int(k)] = complex(c)
        self._c = MappingProxyType({k: c for k, c in sorted(coeffs.items()) if c != 0})

    @classmethod
    def from_coeffs(cls, coeffs):
        """Build from a two-sided map ``k -> c_k`` (negative ``k`` means ``conj(z)^|k|``)."""
        pos = {k: c for k, c in coeffs.items() if k >= 0}
        neg = {-k: c for k, c in coeffs.items() if k < 0}
        return cls(pos, neg)

    @classmethod
    def from_band(cls, band, offset):
        """Inverse of :meth:`band`."""
        return cls.from_coeffs({i - offset: c for i, c in enumerate(band)})

    @classmethod
    def monomial(cls, k, c=1.0):
        """``c z^k`` for ``k >= 0`` and ``c conj(z)^|k|`` for ``k < 0``."""
        return cls.from_coeffs({k: c})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def zero(cls):
        return cls()

    @property
    def coeffs(self):
        """Read-only two-sided map of the nonzero coefficients."""
        return self._c

    @property
    def pos(self):
        return {k: c for k, c in self._c.items() if k >= 0}

    @property
    def neg(self):
        return {-k: c for k, c in self._c.items() if k < 0}

    def coeff(self, k):
        return self._c.get(k, 0j)

    @property
    def pos_degree(self):
        return max((k for k in self._c if k > 0), default=0)

    @property
    def neg_degree(self):
        return max((-k for k in self._c if k < 0), default=0)

    @property
    def degree(self):
        return max(self.pos_degree, self.neg_degree)

    def is_zero(self):
        return not self._c

    def band(self):
        """Dense array ``(c_{-q}, ..., c_0, ..., c_p)`` and the offset ``q``."""
        p, q = self.pos_degree, self.neg_degree
        out = np.zeros(p + q + 1, dtype=np.complex128)
        for k, c in self._c.items():
            out[k + q] = c
        return out, q

    def __call__(self, z):
        """Evaluate on the closed disk; ``z`` may be a scalar or array."""
        z = np.asarray(z, dtype=np.complex128)
        band, q = self.band()
        # Horner in z for c_0..c_p, then in conj(z) for c_{-1}..c_{-q}
        acc = np.zeros_like(z)
        for c in band[q:][::-1]:
            acc = acc * z + c
        zb = np.conj(z)
        tail = np.zeros_like(z)
        for c in band[:q]:
            tail = (tail + c) * zb
        acc = acc + tail
        return acc if acc.ndim else complex(acc)

    def holomorphic_derivative(self, z):
        """``d phi / dz``, i.e. the derivative of the holomorphic part."""
        z = np.asarray(z, dtype=np.complex128)
        acc = np.zeros_like(z)
        for k in range(self.pos_degree, 0, -1):
            acc = acc * z + k * self.coeff(k)
        return acc if acc.ndim else complex(acc)

    def holomorphic_part(self):
        return HarmonicSymbol(self.pos)

    def antiholomorphic_part(self):
        return HarmonicSymbol(neg=self.neg)

    def conj(self):
        """The symbol ``conj(phi)``: ``c_k -> conj(c_{-k})``."""
        return HarmonicSymbol.from_coeffs({-k: c.conjugate() for k, c in self._c.items()})

    def truncate(self, n):
        """Partial sum keeping ``|k| <= n``."""
        return HarmonicSymbol.from_coeffs({k: c for k, c in self._c.items() if abs(k) <= n})

    def __add__(self, other):
        if not isinstance(other, HarmonicSymbol):
            return NotImplemented
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0j) + c
        return HarmonicSymbol.from_coeffs(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        if isinstance(scalar, HarmonicSymbol):
            return NotImplemented
        s = complex(scalar)
        return HarmonicSymbol.from_coeffs({k: c * s for k, c in self._c.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HarmonicSymbol):
            return NotImplemented
        return dict(self._c) == dict(other._c)

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __repr__(self):
        if not self._c:
            return "HarmonicSymbol(0)"
        terms = []
        for k, c in self._c.items():
            basis = "1" if k == 0 else (f"z^{k}" if k > 0 else f"zbar^{-k}")
            terms.append(f"({c:g}){basis}")
        return f"HarmonicSymbol({' + '.join(terms)})"


def z_symbol(k=1):
    return HarmonicSymbol.monomial(k)


def zbar_symbol(k=1):
    return HarmonicSymbol.monomial(-k)


def evaluate(phi, z):
    """Value of ``phi`` at a disk point."""
    from .kernels import as_point

    return phi(as_point(z, "z"))


def is_holomorphic(phi):
    """True when ``phi`` has no ``conj(z)^k`` terms (constants included)."""
    return phi.neg_degree == 0


def is_antiholomorphic(phi):
    """True when ``phi`` has no ``z^k`` terms with ``k >= 1`` (constants included)."""
    return phi.pos_degree == 0


def decompose(phi):
    """Split into the holomorphic part (with the constant) and the ``conj(z)`` part."""
    return phi.holomorphic_part(), phi.antiholomorphic_part()


def cesaro(phi, n):
    """Fejer mean: scale ``c_k`` by ``1 - |k|/(n+1)`` and drop ``|k| > n``."""
    if n < 0:
        raise ValueError(f"Cesaro order must be >= 0, got {n}")
    return HarmonicSymbol.from_coeffs(
        {k: c * (1.0 - abs(k) / (n + 1)) for k, c in phi.coeffs.items() if abs(k) <= n}
    )


def boundary_product(psi, phi):
    """Harmonic extension of ``(psi * phi)`` restricted to the circle.

    On the circle both symbols are trigonometric polynomials, so the product's
    Fourier coefficients are the convolution of the two coefficient sequences.
    """
    if psi.is_zero() or phi.is_zero():
        return HarmonicSymbol.zero()
    a, qa = psi.band()
    b, qb = phi.band()
    return HarmonicSymbol.from_band(np.convolve(a, b), qa + qb)


def sup_norm(phi, m):
    """Max of ``|phi|`` over ``m`` equispaced points of the unit circle.

    A lower bound for the sup norm; ``m >= 8 * degree`` is required so the
    grid resolves the highest harmonic.
    """
    if m < 1:
        raise ValueError(f"sample count must be positive, got {m}")
    if m < 8 * phi.degree:
        raise ValueError(f"need m >= 8 * degree = {8 * phi.degree}, got {m}")
    if phi.is_zero():
        return 0.0
    # |phi|^2 on the circle is the real trig polynomial sum_d r_d e^{i d theta}
    # with r the autocorrelation of the coefficients; phases come from a table
    # indexed mod m so that e.g. |z|^2 = 1 holds exactly at every sample
    band, _ = phi.band()
    r = np.convolve(band, np.conj(band[::-1]))
    mid = band.shape[0] - 1
    table = np.exp(2j * math.pi * np.arange(m) / m)
    table[0] = 1.0
    if m % 2 == 0:
        table[m // 2] = -1.0
    j = np.arange(m)
    acc = np.full(m, r[mid].real)
    for d in range(1, mid + 1):
        acc = acc + 2.0 * (r[mid + d] * table[(d * j) % m]).real
    return float(np.sqrt(max(float(np.max(acc)), 0.0)))


__all__ = [
    "HarmonicSymbol",
    "boundary_product",
    "cesaro",
    "decompose",
    "evaluate",
    "is_antiholomorphic",
    "is_holomorphic",
    "sup_norm",
    "z_symbol",
    "zbar_symbol",
]
