"""Numerical checks of the analytic side: Berezin forms, Carleson bounds, decay.

Area integrals use the normalized measure ``dA = dx dy / pi`` on the unit
disk, discretized by a polar product rule (Gauss-Legendre in ``s = r^2``,
equispaced angles).  With ``n`` radial and ``m`` angular nodes the rule
integrates ``z^a conj(z)^b`` exactly for ``a, b <= min(2n - 1, m - 1)``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _jit
from .errors import QuadratureError
from .kernels import (
    AnalyticVector,
    as_point,
    e_truncation_order,
    normalized_e_tail,
    normalized_e_vector,
)
from .operator import apply
from .symbols import is_holomorphic

MONOMIAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiskQuadrature:
    """Nodes and weights for ``dA`` on the unit disk; weights sum to 1."""

    points: np.ndarray
    weights: np.ndarray
    degree: int
    radial: int = 0
    angular: int = 0

    def __len__(self):
        return self.points.shape[0]

    def nodes(self):
        """``[(point, weight), ...]``."""
        return list(zip(self.points.tolist(), self.weights.tolist()))

    def integrate(self, values):
        """Compensated ``sum(w * values)``; ``values`` sampled at :attr:`points`."""
        return _jit.compensated_dot(values, self.weights)

    def integrate_monomial(self, a, b):
        return self.integrate(self.points**a * np.conj(self.points) ** b)


def _worst_moment_error(s, ws, theta_count, degree):
    """Max deviation of the factorized monomial moments from ``delta_ab/(a+1)``."""
    worst, where = 0.0, (0, 0)
    a = np.arange(degree + 1)
    # radial part: sum w s^a must equal 1/(a+1)
    radial = np.array([math.fsum(ws * s**k) for k in a])
    radial_err = np.abs(radial - 1.0 / (a + 1))
    # angular part: mean of exp(i d theta) must vanish for 0 < |d| <= degree
    theta = 2.0 * np.pi * np.arange(theta_count) / theta_count
    angular_err = np.array(
        [abs(np.mean(np.exp(1j * d * theta))) for d in range(1, degree + 1)]
    )
    k = int(np.argmax(radial_err))
    if radial_err[k] > worst:
        worst, where = float(radial_err[k]), (k, k)
    if angular_err.size:
        d = int(np.argmax(angular_err))
        # |radial moment| <= 1 so the angular error bounds the 2-D error
        if angular_err[d] > worst:
            worst, where = float(angular_err[d]), (d + 1, 0)
    return worst, where


def make_quadrature(radial_points, angular_points):
    """Polar product rule for the normalized area measure.

    The achieved degree ``min(2 * radial - 1, angular - 1)`` is checked
    against ``sum w z^a conj(z)^b = delta_ab / (a + 1)`` before returning.

    Raises
    ------
    QuadratureError
        If a monomial moment misses by more than 1e-12; the message names the
        worst ``(a, b)``.
    """
    if radial_points < 1 or angular_points < 1:
        raise ValueError("need at least one radial and one angular node")
    x, wx = np.polynomial.legendre.leggauss(radial_points)
    s = 0.5 * (x + 1.0)
    ws = 0.5 * wx
    degree = min(2 * radial_points - 1, angular_points - 1)
    worst, (a, b) = _worst_moment_error(s, ws, angular_points, degree)
    if worst > MONOMIAL_TOL:
        raise QuadratureError(
            f"quadrature ({radial_points}, {angular_points}) fails the monomial "
            f"identity at (a, b) = ({a}, {b}) by {worst:.3e}"
        )
    theta = 2.0 * np.pi * np.arange(angular_points) / angular_points
    r = np.sqrt(s)
    points = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(ws / angular_points, angular_points)
    return DiskQuadrature(points, weights, degree, radial_points, angular_points)


def quadrature_for_point(w, degree, digits=14):
    """Rule resolving polynomials of ``degree`` times ``|k_w|^2`` near ``w``.

    The Bergman kernel at ``w`` has a pole at ``1/conj(w)``; node counts grow
    like ``1 / (1 - |w|)`` angularly and ``1 / sqrt(1 - |w|)`` radially.
    """
    rho = abs(as_point(w))
    depth = digits * math.log(10.0)
    angular = 2 * degree + 2
    radial = degree // 2 + 1
    if rho > 0.0:
        angular += int(math.ceil(depth / -math.log(rho))) if rho < 1.0 else 0
        # Legendre convergence radius for a pole at s = 1/rho^2
        a = 2.0 / rho**2 - 1.0
        radial += int(math.ceil(depth / (2.0 * math.log(a + math.sqrt(a * a - 1.0)))))
    angular = min(angular, 200_000)
    return make_quadrature(radial + 8, angular + 8)


def berezin_closed_form(phi, w):
    """``w (1 - |w|^2) phi_1'(w) + phi(w)`` with ``phi_1`` the holomorphic part."""
    w = as_point(w)
    return w * (1.0 - abs(w) ** 2) * phi.holomorphic_derivative(w) + phi(w)


def berezin_form(phi, w, n=None, tail=1e-10):
    """``<T_phi E~_w, E~_w>`` by exact coefficient arithmetic.

    ``E~_w = (1 - |w|^2) z / (1 - conj(w) z)`` is the unit vector of D0
    associated with ``w``; it is cut after ``n`` terms, where by default ``n``
    is the smallest order whose tail norm is below ``tail``.
    """
    w = as_point(w)
    if abs(w) > 0.95:
        raise ValueError(f"|w| must be <= 0.95, got {abs(w)!r}")
    if n is None:
        n = e_truncation_order(w, tail)
    e = normalized_e_vector(w, n)
    return apply(phi, e).inner(e)


def berezin_tail_bound(phi, w, n):
    """Bound on ``|berezin_form - closed form|`` from the truncation tail.

    With ``t`` the tail norm and ``||T_phi|| <= sum |c_k| sqrt(|k| + 1)``, the
    neglected part is at most ``||T_phi|| (2 t + t^2)``.
    """
    t = normalized_e_tail(w, n)
    norm = sum(abs(c) * math.sqrt(abs(k) + 1) for k, c in phi.coeffs.items())
    return norm * (2.0 * t + t * t)


def normalized_bergman_kernel(w, z):
    """``(1 - |w|^2) / (1 - conj(w) z)^2``; unit norm in ``L^2(dA)``."""
    return (1.0 - abs(w) ** 2) / (1.0 - np.conj(w) * z) ** 2


def _product_degree(psi, phi):
    return psi.degree + phi.degree


def bergman_berezin(psi, phi, w, q=None):
    """Bergman-space Berezin transform of the pointwise product ``psi * phi`` at ``w``.

    ``B(f)(w) = int f |k_w|^2 dA`` with the normalized kernel above.

    Raises
    ------
    QuadratureError
        If ``q.degree`` is below ``deg(psi) + deg(phi) + 6``.
    """
    w = as_point(w)
    need = _product_degree(psi, phi) + 6
    if q is None:
        q = quadrature_for_point(w, need)
    elif q.degree < need:
        raise QuadratureError(f"quadrature degree {q.degree} < required {need}")
    z = q.points
    vals = psi(z) * phi(z) * np.abs(normalized_bergman_kernel(w, z)) ** 2
    return q.integrate(vals)


def compact_product_decay(psi, phi, tau, radii, q=None):
    """``|B(psi phi)(r) - tau(r)|`` along the positive real radius.

    Decay to zero as ``r -> 1`` is the signature of ``T_psi T_phi - T_tau``
    being compact.
    """
    out = []
    for r in radii:
        r = float(r)
        if not 0.0 <= r < 1.0:
            raise ValueError(f"radii must lie in [0, 1), got {r!r}")
        out.append(abs(bergman_berezin(psi, phi, r, q) - tau(r)))
    return out


@dataclass
class CarlesonEstimate:
    """Lower bound for the Carleson constant of ``|d phi/dz|^2 dA``."""

    lower_bound: float
    family_description: str
    ratios: list = field(default_factory=list)


def monomial_family(n_max):
    """``{"z^n": z^n}`` for ``n = 1..n_max``."""
    return {f"z^{n}": AnalyticVector.monomial(n) for n in range(1, n_max + 1)}


def kernel_family(points, n=None, tail=1e-10):
    """Normalized ``E_w`` vectors at the given points (cut by the tail bound)."""
    fam = {}
    for w in points:
        w = as_point(w)
        order = n if n is not None else e_truncation_order(w, tail)
        fam[f"E({w.real:.6g}{w.imag:+.6g}j)"] = normalized_e_vector(w, order)
    return fam


def carleson_lower_bound(phi, family, q, description=None):
    """Max over the family of ``int |f|^2 |d phi/dz|^2 dA / ||f||^2``.

    Every ratio is a genuine lower bound for the best constant ``C`` in
    ``int |f|^2 |d phi/dz|^2 dA <= C ||f||^2``.

    Parameters
    ----------
    phi : HarmonicSymbol
    family : mapping of id -> AnalyticVector, or a sequence of vectors
    q : DiskQuadrature
        Degree must be at least ``2 (deg f + deg phi)`` for every ``f``.
    description : str, optional
    """
    if not isinstance(family, dict):
        family = {f"f{i}": f for i, f in enumerate(family)}
    if not family:
        raise ValueError("test family is empty")
    ratios = []
    dphi = None
    for name, f in family.items():
        n2 = f.norm2()
        if n2 == 0.0:
            raise ValueError(f"test function {name!r} has zero norm")
        need = 2 * (f.degree + phi.degree)
        if q.degree < need:
            raise QuadratureError(
                f"quadrature degree {q.degree} < {need} needed for test {name!r}"
            )
        if phi.pos_degree == 0:
            ratios.append((name, 0.0))
            continue
        if dphi is None:
            dphi = np.abs(phi.holomorphic_derivative(q.points)) ** 2
        mass = q.integrate(np.abs(f(q.points)) ** 2 * dphi).real
        ratios.append((name, mass / n2))
    desc = description or f"{len(family)} test functions"
    return CarlesonEstimate(max(r for _, r in ratios), desc, ratios)


def bloch_decay(phi1, radii):
    """``(1 - r^2) |phi_1'(r)|`` for a holomorphic symbol along the real radius."""
    if not is_holomorphic(phi1):
        raise ValueError("bloch_decay needs a holomorphic symbol")
    out = []
    for r in radii:
        r = float(r)
        if not 0.0 <= r < 1.0:
            raise ValueError(f"radii must lie in [0, 1), got {r!r}")
        out.append((1.0 - r * r) * abs(phi1.holomorphic_derivative(r)))
    return out


__all__ = [
    "CarlesonEstimate",
    "DiskQuadrature",
    "berezin_closed_form",
    "berezin_form",
    "berezin_tail_bound",
    "bergman_berezin",
    "bloch_decay",
    "carleson_lower_bound",
    "compact_product_decay",
    "kernel_family",
    "make_quadrature",
    "monomial_family",
    "normalized_bergman_kernel",
    "quadrature_for_point",
]
