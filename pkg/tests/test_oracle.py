import numpy as np
import pytest

from conftest import match_distance, skew_example
from tpal import PalindromicPolynomial, dickson_transform, eval_dickson, gen_h, gen_random
from tpal.errors import PairingFailure, ZeroArgument
from tpal.oracle import (ScalarPoly, _pair_reciprocals, det_poly, logdet_derivative_check,
                         reference_spectrum, residual, scalar_aberth)

H12_LAMBDAS = [-1, -1, np.exp(1j * np.pi / 3), np.exp(-1j * np.pi / 3)]


def test_det_poly_scalar_h12():
    np.testing.assert_allclose(det_poly(gen_h(1, 2)).coeffs, [1, 1, 0, 1, 1], atol=1e-14)


def test_det_poly_diagonal():
    # diag(lam + 1/lam, lam + 3 + 1/lam)
    P = PalindromicPolynomial([np.diag([0.0, 3.0]), np.eye(2)])
    ref = np.polynomial.polynomial.polymul([1, 0, 1], [1, 3, 1])
    np.testing.assert_allclose(det_poly(P).coeffs, ref, atol=1e-13)


@pytest.mark.parametrize("seed", range(5))
def test_det_poly_palindromic(seed):
    c = det_poly(gen_random(2, 3, seed)).coeffs
    assert len(c) == 13
    np.testing.assert_allclose(c, c[::-1], atol=1e-10 * np.max(np.abs(c)))


def test_scalar_poly_trims_and_evaluates():
    q = ScalarPoly([1, 2, 3, 1e-20])
    assert q.degree == 2
    assert q(2.0) == 17


def test_scalar_aberth_basic():
    z, ok = scalar_aberth(ScalarPoly([1, 0, 1]))
    assert ok.all() and match_distance(z, [1j, -1j]) < 1e-14
    z, ok = scalar_aberth(ScalarPoly(np.polynomial.polynomial.polyfromroots([1, 2, 3])))
    assert ok.all() and match_distance(z, [1, 2, 3]) < 1e-10
    z, ok = scalar_aberth(ScalarPoly([3, 4]))
    assert z[0] == -0.75


def test_reference_h12():
    ref = reference_spectrum(gen_h(1, 2))
    assert match_distance(ref.lambdas, H12_LAMBDAS) < 1e-6
    # the double root lam = -1 is only resolved to about sqrt(eps)
    assert match_distance(ref.y, [-2, 1]) < 1e-8


def test_reference_scalar_quadratic():
    ref = reference_spectrum(PalindromicPolynomial([[[1.0]], [[1.0]]]))
    assert match_distance(ref.lambdas, np.exp([2j * np.pi / 3, -2j * np.pi / 3])) < 1e-14


def test_reference_counts_degree():
    ref = reference_spectrum(gen_random(2, 2, 3))
    assert ref.degree == 8 and len(ref.lambdas) == 8 and len(ref.y) == 4
    np.testing.assert_allclose(ref.lambdas[0::2] * ref.lambdas[1::2], 1, atol=1e-10)


def test_pairing_failure():
    with pytest.raises(PairingFailure):
        _pair_reciprocals(np.array([2.0, 3.0]))
    with pytest.raises(PairingFailure):
        _pair_reciprocals(np.array([2.0, 0.5, 3.0]))


@pytest.mark.parametrize("seed", range(3))
def test_factorization_consistency(seed, rng):
    P = gen_random(2, 2, seed)
    ref = reference_spectrum(P)
    D = dickson_transform(P)
    ratios = []
    for y in rng.standard_normal(5) + 1j * rng.standard_normal(5):
        p = np.prod(y - ref.y)
        ratios.append(np.linalg.det(eval_dickson(D, y)) / p**2)
    ratios = np.array(ratios)
    assert np.max(np.abs(ratios - ratios[0])) <= 1e-6 * abs(ratios[0])


def test_logdet_check_values():
    D = dickson_transform(PalindromicPolynomial([[[1.0]], [[1.0]]]))
    assert abs(logdet_derivative_check(D, 1.0) - 1) < 1e-8
    assert abs(logdet_derivative_check(dickson_transform(skew_example()), 3.0) - 2.5) < 1e-6


def test_residual_values():
    P = gen_h(1, 2)
    assert residual(P, np.exp(1j * np.pi / 3)) <= 1e-12
    assert residual(P, 10.0) >= 1e-1
    with pytest.raises(ZeroArgument):
        residual(P, 0)


def test_residual_reciprocal_invariance(rng):
    P = gen_random(3, 3, 1)
    for lam in rng.standard_normal(5) + 1j * rng.standard_normal(5):
        a, b = residual(P, lam), residual(P, 1 / lam)
        assert 0.5 <= a / b <= 2
