"""Brute-force reference computations, independent of the Dickson pipeline.

Nothing here touches :mod:`tpal.dickson` or :mod:`tpal.newton_trace`: the
determinant ``det(lam^k P(lam))`` is interpolated in the monomial basis and
its roots are found by a scalar Ehrlich-Aberth iteration on Horner values.
Meant for desk-scale verification (degree up to a couple of hundred).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import EvaluationSingular, PairingFailure, SingularAtNode, ZeroArgument
from .polynomial import PalindromicPolynomial

PAIRING_LIMIT = 1e-4


@dataclass(frozen=True)
class ScalarPoly:
    """Monomial-basis polynomial, coefficients in ascending order."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.size:
            cut = 1e-12 * np.max(np.abs(c))
            nz = np.flatnonzero(np.abs(c) > cut)
            c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        acc = 0j
        for a in self.coeffs[::-1]:
            acc = acc * z + a
        return acc


def _monomial_matrix(P: PalindromicPolynomial, lam: complex) -> np.ndarray:
    # lam^k P(lam) = sum_{i=0}^{2k} T_i lam^i with T_{k+j} = A_j, T_{k-j} = A_j^T
    A, k = P.coeffs, P.k
    acc = np.zeros((P.n, P.n), dtype=complex)
    for i in range(2 * k, -1, -1):
        T = A[i - k] if i >= k else A[k - i].T
        acc = acc * lam + T
    return acc


def _det(X: np.ndarray) -> complex:
    return complex(np.linalg.det(X))


def _interpolate_det(matrix_at, degree: int) -> ScalarPoly:
    D = degree + 1
    for radius in (1.0, 1.1):
        nodes = radius * np.exp(2j * np.pi * np.arange(D) / D)
        vals = np.array([_det(matrix_at(z)) for z in nodes])
        if np.all(vals != 0):
            break
    else:
        raise EvaluationSingular("an interpolation node is an exact eigenvalue at both radii")
    coeffs = np.fft.fft(vals) / D / radius ** np.arange(D)
    return ScalarPoly(coeffs)


def det_poly(P: PalindromicPolynomial) -> ScalarPoly:
    """Coefficients of ``det(lam^k P(lam))`` by interpolation on a circle."""
    return _interpolate_det(lambda z: _monomial_matrix(P, z), 2 * P.n * P.k)


def monomial_eigenvalues(coeffs, tol: float = 1e-14) -> np.ndarray:
    """Finite eigenvalues of ``sum_j P_j lam^j`` given ``P_0, ..., P_d``.

    No structure is assumed, which makes this usable on the odd-degree
    inputs of :func:`tpal.polynomial.odd_to_even`.
    """
    C = np.asarray(coeffs, dtype=complex)
    d, n = C.shape[0] - 1, C.shape[1]

    def at(z):
        acc = np.zeros((n, n), dtype=complex)
        for A in C[::-1]:
            acc = acc * z + A
        return acc

    roots, _ = scalar_aberth(_interpolate_det(at, d * n), tol=tol)
    return roots


def scalar_aberth(q: ScalarPoly, tol: float = 1e-14, maxit: int = 500):
    """All roots of ``q`` with a flag array telling which ones converged."""
    c = q.coeffs
    d = q.degree
    if d < 1:
        raise ValueError("need degree >= 1")
    if d == 1:
        return np.array([-c[0] / c[1]]), np.array([True])
    dc = c[1:] * np.arange(1, d + 1)
    R = 1 + np.max(np.abs(c[:-1] / c[-1]))
    z = R * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    done = np.zeros(d, dtype=bool)
    for _ in range(maxit):
        for j in range(d):
            if done[j]:
                continue
            pv = np.polynomial.polynomial.polyval(z[j], c)
            if pv == 0:
                done[j] = True
                continue
            ratio = pv / np.polynomial.polynomial.polyval(z[j], dc)
            diff = z[j] - np.delete(z, j)
            S = np.sum(1.0 / diff)
            h = ratio / (1 - ratio * S)
            z[j] -= h
            if abs(h) <= tol * abs(z[j]):
                done[j] = True
        if done.all():
            break
    return z, done


def _pair_reciprocals(lams: np.ndarray):
    m = len(lams)
    if m % 2:
        raise PairingFailure(float("inf"), PAIRING_LIMIT)
    cost = np.abs(np.outer(lams, lams) - 1)
    np.fill_diagonal(cost, np.inf)
    order = np.dstack(np.unravel_index(np.argsort(cost, axis=None), cost.shape))[0]
    taken = np.zeros(m, dtype=bool)
    pairs = []
    worst = 0.0
    for i, j in order:
        if len(pairs) * 2 == m:
            break
        if i < j and not taken[i] and not taken[j]:
            taken[i] = taken[j] = True
            pairs.append((i, j))
            worst = max(worst, cost[i, j])
    if worst > PAIRING_LIMIT:
        raise PairingFailure(worst, PAIRING_LIMIT)
    return pairs


@dataclass
class ReferenceSpectrum:
    lambdas: np.ndarray  # consecutive reciprocal pairs
    y: np.ndarray
    degree: int
    converged: bool


def reference_spectrum(P: PalindromicPolynomial, tol: float = 1e-14) -> ReferenceSpectrum:
    q = det_poly(P)
    roots, ok = scalar_aberth(q, tol=tol)
    keep = (np.abs(roots) > 1e-8) & (np.abs(roots) < 1e8)
    roots = roots[keep]
    pairs = _pair_reciprocals(roots)
    lam = np.array([v for i, j in pairs for v in (roots[i], roots[j])])
    y = np.array([roots[i] + roots[j] for i, j in pairs])
    return ReferenceSpectrum(lam, y, q.degree, bool(ok.all()))


def _dickson_eval(M: np.ndarray, y: complex) -> np.ndarray:
    prev, cur = 2.0, y
    acc = 2.0 * M[0]
    for j in range(1, M.shape[0]):
        acc = acc + cur * M[j]
        prev, cur = cur, y * cur - prev
    return acc


def logdet_derivative_check(D, y) -> complex:
    """Central difference of ``log det M`` with step ``1e-6 (1 + |y|)``."""
    y = complex(y)
    h = 1e-6 * (1 + abs(y))
    hi = _det(_dickson_eval(D.M, y + h))
    lo = _det(_dickson_eval(D.M, y - h))
    if hi == 0 or lo == 0:
        raise SingularAtNode(f"det M vanishes next to y = {y}")
    return cmath.log(hi / lo) / (2 * h)


def residual(P: PalindromicPolynomial, lam) -> float:
    """Scaled ``|det P(lam)|``; small means ``lam`` is nearly an eigenvalue."""
    lam = complex(lam)
    if lam == 0:
        raise ZeroArgument("residual undefined at lam = 0")
    a = abs(lam)
    norms = [float(np.max(np.sum(np.abs(Aj), axis=1))) for Aj in P.coeffs]
    scale = sum(nj * (a**j + a**-j) for j, nj in enumerate(norms))
    if scale == 0:
        return math.inf
    val = abs(_det(_monomial_matrix(P, lam))) / a ** (P.n * P.k)
    return val / scale**P.n
