import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtop.symbols import (
    HarmonicSymbol,
    boundary_product,
    cesaro,
    decompose,
    evaluate,
    is_antiholomorphic,
    is_holomorphic,
    sup_norm,
    z_symbol,
    zbar_symbol,
)

Z = z_symbol()
ZB = zbar_symbol()
coef = st.integers(-8, 8).map(lambda k: k / 4)
cplx = st.tuples(coef, coef).map(lambda t: complex(*t))
symbols = st.dictionaries(st.integers(-6, 6), cplx, max_size=6).map(HarmonicSymbol.from_coeffs)


class TestConstruction:
    def test_zero_pruned(self):
        phi = HarmonicSymbol({0: 0, 2: 1}, {1: 0})
        assert dict(phi.coeffs) == {2: 1}
        assert HarmonicSymbol.zero().is_zero()

    def test_monomial(self):
        assert HarmonicSymbol.monomial(3, 2).coeff(3) == 2
        assert HarmonicSymbol.monomial(-2).neg == {2: 1}

    @pytest.mark.parametrize("pos,neg", [({-1: 1}, None), (None, {0: 1}), ({1.5: 1}, None)])
    def test_bad_indices(self, pos, neg):
        with pytest.raises(ValueError):
            HarmonicSymbol(pos, neg)

    def test_degrees(self):
        phi = HarmonicSymbol({0: 1, 4: 1}, {2: 1})
        assert (phi.pos_degree, phi.neg_degree, phi.degree) == (4, 2, 4)

    def test_band_round_trip(self):
        phi = HarmonicSymbol({0: 1, 3: 2j}, {2: -1})
        band, q = phi.band()
        assert q == 2
        assert list(band) == [-1, 0, 1, 0, 0, 2j]
        assert HarmonicSymbol.from_band(band, q) == phi

    def test_coeffs_read_only(self):
        with pytest.raises(TypeError):
            Z.coeffs[5] = 1

    def test_hash_and_eq(self):
        a = HarmonicSymbol({1: 1}, {1: 2})
        b = HarmonicSymbol.from_coeffs({-1: 2, 1: 1})
        assert a == b and hash(a) == hash(b)

    def test_repr(self):
        assert "zbar^2" in repr(zbar_symbol(2))
        assert repr(HarmonicSymbol.zero()) == "HarmonicSymbol(0)"


class TestEvaluate:
    def test_examples(self):
        assert evaluate(Z + 2 * ZB, 0.5) == 1.5
        assert evaluate(HarmonicSymbol.constant(1), 0.3 - 0.2j) == 1
        assert abs(evaluate(zbar_symbol(2), 0.3j) - (-0.09)) < 1e-16
        assert abs(evaluate(zbar_symbol(2), 0.3j) - np.conj(0.3j) ** 2) < 1e-16

    def test_rejects_outside_disk(self):
        with pytest.raises(ValueError):
            evaluate(Z, 1.2)

    def test_array_evaluation(self):
        phi = HarmonicSymbol({0: 1, 2: 1}, {1: 3})
        z = np.array([0.1, 0.2j, -0.5 + 0.1j])
        want = 1 + z**2 + 3 * np.conj(z)
        assert np.allclose(phi(z), want, atol=1e-15)

    def test_holomorphic_derivative(self):
        phi = HarmonicSymbol({1: 2, 3: 1}, {4: 7})
        assert phi.holomorphic_derivative(0.5) == 2 + 3 * 0.25


class TestClassification:
    def test_examples(self):
        assert (is_holomorphic(z_symbol(3)), is_antiholomorphic(z_symbol(3))) == (True, False)
        c = HarmonicSymbol.constant(5)
        assert (is_holomorphic(c), is_antiholomorphic(c)) == (True, True)
        assert (is_holomorphic(Z + ZB), is_antiholomorphic(Z + ZB)) == (False, False)

    def test_decompose(self):
        assert decompose(Z + 2 * ZB) == (Z, 2 * ZB)
        zero = HarmonicSymbol.zero()
        assert decompose(zero) == (zero, zero)
        three = HarmonicSymbol.constant(3)
        assert decompose(three + zbar_symbol(2)) == (three, zbar_symbol(2))

    @given(symbols)
    def test_decompose_sums_back(self, phi):
        h, a = decompose(phi)
        assert h + a == phi
        assert is_holomorphic(h) and is_antiholomorphic(a)


class TestCesaro:
    def test_examples(self):
        assert cesaro(Z, 0).is_zero()
        assert cesaro(Z, 1) == 0.5 * Z
        assert cesaro(HarmonicSymbol.constant(2) + zbar_symbol(3), 2) == HarmonicSymbol.constant(2)

    def test_negative_order(self):
        with pytest.raises(ValueError):
            cesaro(Z, -1)

    def test_factors_converge(self):
        phi = HarmonicSymbol({0: 1, 2: 1}, {3: 1})
        errs = [max(abs(cesaro(phi, n).coeff(k) - phi.coeff(k)) for k in (-3, 0, 2)) for n in (3, 10, 100, 1000)]
        assert all(a > b for a, b in zip(errs, errs[1:]))
        assert errs[-1] < 4e-3


class TestBoundaryProduct:
    def test_examples(self):
        assert boundary_product(ZB, Z) == HarmonicSymbol.constant(1)
        phi = HarmonicSymbol({0: 1, 2: 3}, {1: 2j})
        assert boundary_product(HarmonicSymbol.constant(1), phi) == phi
        assert boundary_product(Z, Z) == z_symbol(2)
        assert boundary_product(ZB, Z + ZB) == HarmonicSymbol.constant(1) + zbar_symbol(2)

    def test_zero(self):
        assert boundary_product(HarmonicSymbol.zero(), Z).is_zero()

    @given(symbols, symbols)
    def test_matches_on_circle(self, psi, phi):
        theta = 2 * math.pi * np.arange(16) / 16
        z = np.exp(1j * theta)
        assert np.allclose(boundary_product(psi, phi)(z), psi(z) * phi(z), atol=1e-12)

    def test_radial_limit(self):
        psi, phi = HarmonicSymbol({1: 1}, {2: 1}), HarmonicSymbol({3: 2}, {1: -1})
        tau = boundary_product(psi, phi)
        gaps = []
        for r in (0.5, 0.9, 0.99, 0.999):
            z = r * np.exp(0.7j)
            gaps.append(abs(tau(z) - psi(z) * phi(z)))
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-2


class TestSupNorm:
    def test_examples(self):
        assert sup_norm(Z, 64) == 1.0
        assert sup_norm(Z + ZB, 64) == 2.0
        assert sup_norm(HarmonicSymbol.zero(), 5) == 0.0

    def test_resolution_required(self):
        with pytest.raises(ValueError):
            sup_norm(z_symbol(10), 40)
