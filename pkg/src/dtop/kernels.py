"""Reproducing kernels of the Dirichlet space D0 and the Bergman space.

Elements of D0 are power series ``f = sum_{n>=1} a_n z^n`` with norm
``||f||^2 = sum n |a_n|^2``; the monomials ``z^n`` are orthogonal with
``<z^n, z^m> = n delta_{nm}``.  That convention is the only inner product
used anywhere in the package.
"""

import math
from dataclasses import dataclass

import numpy as np


def as_point(w, name="w"):
    """Validate a point of the open unit disk and return it as ``complex``."""
    w = complex(w)
    if not abs(w) < 1.0:
        raise ValueError(f"{name} must lie in the open unit disk, got |{name}| = {abs(w)!r}")
    return w


def _trim(coeffs):
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return coeffs[:0]
    return coeffs[: nz[-1] + 1]


@dataclass(frozen=True, eq=False)
class AnalyticVector:
    """Finitely supported element ``sum_{n>=1} a_n z^n`` of D0.

    ``coeffs[n - 1]`` holds ``a_n``.  Trailing zeros are dropped on
    construction so two vectors compare equal iff their coefficients do.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        arr = _trim(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zero(cls):
        return cls(np.zeros(0, dtype=np.complex128))

    @classmethod
    def monomial(cls, n, c=1.0):
        if n < 1:
            raise ValueError(f"D0 monomials start at z^1, got z^{n}")
        arr = np.zeros(n, dtype=np.complex128)
        arr[n - 1] = c
        return cls(arr)

    @classmethod
    def from_dict(cls, mapping):
        """Build from ``{n: a_n}`` with every ``n >= 1``."""
        if not mapping:
            return cls.zero()
        bad = [n for n in mapping if int(n) != n or n < 1]
        if bad:
            raise ValueError(f"coefficient indices must be integers >= 1, got {sorted(bad)}")
        arr = np.zeros(int(max(mapping)), dtype=np.complex128)
        for n, c in mapping.items():
            arr[int(n) - 1] = c
        return cls(arr)

    @property
    def degree(self):
        """Largest index with a nonzero coefficient (0 for the zero vector)."""
        return self.coeffs.shape[0]

    def coefficient(self, n):
        if 1 <= n <= self.degree:
            return complex(self.coeffs[n - 1])
        return 0j

    def support(self):
        return [int(n) + 1 for n in np.flatnonzero(self.coeffs)]

    def to_dict(self):
        return {n: complex(self.coeffs[n - 1]) for n in self.support()}

    def padded(self, n):
        """Dense length-``n`` coefficient array ``(a_1, ..., a_n)``, cut or zero-filled."""
        out = np.zeros(n, dtype=np.complex128)
        m = min(n, self.degree)
        out[:m] = self.coeffs[:m]
        return out

    def truncate(self, n):
        return AnalyticVector(self.coeffs[:n])

    def norm2(self):
        idx = np.arange(1, self.degree + 1)
        return math.fsum(idx * np.abs(self.coeffs) ** 2)

    def norm(self):
        return math.sqrt(self.norm2())

    def inner(self, other):
        """``<self, other>`` in D0 (linear in ``self``)."""
        m = min(self.degree, other.degree)
        terms = np.arange(1, m + 1) * self.coeffs[:m] * np.conj(other.coeffs[:m])
        return complex(math.fsum(terms.real), math.fsum(terms.imag))

    def __call__(self, z):
        """Evaluate ``f(z)``; ``z`` may be a scalar or an array."""
        z = np.asarray(z, dtype=np.complex128)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = (acc + c) * z
        return acc if acc.ndim else complex(acc)

    def derivative(self, z):
        """Evaluate ``f'(z)``."""
        z = np.asarray(z, dtype=np.complex128)
        acc = np.zeros_like(z)
        for n in range(self.degree, 0, -1):
            acc = acc * z + n * self.coeffs[n - 1]
        return acc if acc.ndim else complex(acc)

    def _binary(self, other, op):
        n = max(self.degree, other.degree)
        return AnalyticVector(op(self.padded(n), other.padded(n)))

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, scalar):
        return AnalyticVector(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return AnalyticVector(-self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, AnalyticVector):
            return NotImplemented
        return self.degree == other.degree and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        terms = " + ".join(f"({c:g})z^{n}" for n, c in self.to_dict().items())
        return f"AnalyticVector({terms or '0'})"


def inner(f, g):
    """D0 inner product ``<f, g>``."""
    return f.inner(g)


def eval_dirichlet_kernel(w, z):
    """``R_w(z) = sum_k z^k conj(w)^k / k = log(1 / (1 - z conj(w)))``.

    ``1 - z conj(w)`` has positive real part on the disk, so the principal
    branch is continuous there.
    """
    w = as_point(w)
    z = as_point(z, "z")
    return complex(-np.log1p(-z * w.conjugate()))


def dirichlet_kernel_dz(w, z):
    """``dR_w/dz (z) = conj(w) / (1 - z conj(w))``."""
    w = as_point(w)
    z = as_point(z, "z")
    return w.conjugate() / (1.0 - z * w.conjugate())


def dirichlet_kernel_vector(w, n):
    """The kernel ``R_w`` cut to its first ``n`` coefficients ``conj(w)^k / k``."""
    w = as_point(w)
    k = np.arange(1, n + 1)
    return AnalyticVector(np.conj(w) ** k / k)


def eval_bergman_kernel(w, z):
    """Bergman kernel ``K_w(z) = 1 / (1 - conj(w) z)^2``."""
    w = as_point(w)
    z = as_point(z, "z")
    return 1.0 / (1.0 - w.conjugate() * z) ** 2


def kernel_derivative_identity_residual(w, z, h):
    """Central-difference check of ``d/dw conj(dR_w/dz) = conj(K_w(z))``.

    ``w -> conj(dR_w/dz (z)) = w / (1 - w conj(z))`` is holomorphic in ``w``,
    so a real-step central difference approximates its complex derivative
    with O(h^2) error.
    """
    w = as_point(w)
    z = as_point(z, "z")
    h = float(h)
    if not h > 0.0:
        raise ValueError(f"step h must be positive, got {h!r}")
    if abs(w + h) >= 1.0 or abs(w - h) >= 1.0:
        raise ValueError(f"w +/- h leaves the unit disk (w={w}, h={h})")

    def g(x):
        return dirichlet_kernel_dz(x, z).conjugate()

    fd = (g(w + h) - g(w - h)) / (2.0 * h)
    return abs(fd - eval_bergman_kernel(w, z).conjugate())


def e_vector(w, n):
    """``E_w = z / (1 - conj(w) z)`` cut to ``n`` terms: ``a_{j+1} = conj(w)^j``."""
    w = as_point(w)
    if n < 1:
        raise ValueError(f"truncation order must be >= 1, got {n}")
    return AnalyticVector(np.conj(w) ** np.arange(n))


def e_vector_norm2(w):
    """Exact ``||E_w||^2 = 1 / (1 - |w|^2)^2``."""
    t = abs(as_point(w)) ** 2
    return 1.0 / (1.0 - t) ** 2


def normalized_e_vector(w, n):
    """Unit vector ``(1 - |w|^2) E_w`` cut to ``n`` terms."""
    w = as_point(w)
    return e_vector(w, n) * (1.0 - abs(w) ** 2)


def normalized_e_tail(w, n):
    """D0 norm of the part of ``(1 - |w|^2) E_w`` beyond the first ``n`` terms.

    Uses ``sum_{j>=n} (j+1) t^j = t^n ((n+1)/(1-t) + t/(1-t)^2)``.
    """
    t = abs(as_point(w)) ** 2
    tail2 = t**n * ((n + 1) * (1.0 - t) + t)
    return math.sqrt(tail2)


def e_truncation_order(w, tail=1e-10):
    """Smallest ``n`` whose normalized ``E_w`` tail norm is at most ``tail``."""
    w = as_point(w)
    t = abs(w) ** 2
    if t == 0.0:
        return 1
    # start from the geometric estimate, then walk to the exact cut
    n = max(1, int(2.0 * math.log(tail) / math.log(t)))
    while n > 1 and normalized_e_tail(w, n - 1) <= tail:
        n -= 1
    while normalized_e_tail(w, n) > tail:
        n += 1
    return n


def project_monomial(a, b):
    """Orthogonal projection onto D0 of ``z^a conj(z)^b``.

    Equals ``z^(a-b)`` when ``a > b`` and 0 otherwise.
    """
    if a < 0 or b < 0:
        raise ValueError(f"exponents must be non-negative, got ({a}, {b})")
    if a > b:
        return AnalyticVector.monomial(a - b)
    return AnalyticVector.zero()


__all__ = [
    "AnalyticVector",
    "as_point",
    "dirichlet_kernel_dz",
    "dirichlet_kernel_vector",
    "e_truncation_order",
    "e_vector",
    "e_vector_norm2",
    "eval_bergman_kernel",
    "eval_dirichlet_kernel",
    "inner",
    "kernel_derivative_identity_residual",
    "normalized_e_tail",
    "normalized_e_vector",
    "project_monomial",
]
