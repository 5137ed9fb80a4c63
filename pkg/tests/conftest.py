import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from tpal import PalindromicPolynomial


def skew_example(a=1.0):
    """2x2 polynomial with a Jordan chain at lam = 1 whose Dickson image is semisimple."""
    A0 = np.array([[-2, 0], [0, 0]], dtype=complex)
    A1 = np.array([[1, a], [-a, 1]], dtype=complex)
    return PalindromicPolynomial([A0, A1])


def skew_example_M(y, a=1.0):
    return np.array([
        [y - 2, 0, 0, a * y * y - 4 * a],
        [0, y, 4 * a - a * y * y, 0],
        [0, a, y - 2, 0],
        [-a, 0, 0, y],
    ], dtype=complex)


def match_distance(a, b):
    """Largest distance under the optimal one-to-one matching of two multisets."""
    a, b = np.asarray(a), np.asarray(b)
    assert a.shape == b.shape
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def dense_trace(D, y):
    from tpal.linearization import build_pencil, densify
    L = build_pencil(D)
    return complex(np.trace(np.linalg.solve(densify(L, y), L.E())))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
