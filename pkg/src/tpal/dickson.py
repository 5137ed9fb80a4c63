"""Dickson basis arithmetic and the doubled polynomial ``M(y)``.

The Dickson polynomials satisfy ``phi_0 = 2``, ``phi_1 = y`` and
``y phi_j = phi_{j+1} + phi_{j-1}``, so that
``phi_j(lam + 1/lam) = lam^j + lam^-j``.  Every coefficient list in this
module is an expansion ``sum_j X_j phi_j(y)``; since ``phi_0 = 2`` the
constant term of such an expansion is ``2 X_0``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegreeTooSmall, NotPurelyPalindromic, ZeroArgument
from .polynomial import PalindromicPolynomial


def phi(j: int, y):
    """Value of the Dickson polynomial ``phi_j`` at ``y``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    prev, cur = 2.0 + 0.0 * y, y
    if j == 0:
        return prev
    for _ in range(j - 1):
        prev, cur = cur, y * cur - prev
    return cur


def phi_all(m: int, y) -> np.ndarray:
    """Return ``[phi_0(y), ..., phi_m(y)]`` in a single pass."""
    out = np.empty(m + 1, dtype=complex)
    out[0] = 2.0
    if m >= 1:
        out[1] = y
    for j in range(1, m):
        out[j + 1] = y * out[j] - out[j - 1]
    return out


def dickson_point(lam) -> complex:
    lam = complex(lam)
    if lam == 0:
        raise ZeroArgument("the Dickson map is undefined at lam = 0")
    return lam + 1.0 / lam


def recover_lambda_pair(y) -> tuple[complex, complex]:
    """Both roots of ``lam^2 - y lam + 1``, larger modulus first.

    The second root is taken as the reciprocal of the first, which avoids
    the cancellation of the naive quadratic formula.
    """
    y = complex(y)
    s = cmath.sqrt((y - 2.0) * (y + 2.0))
    big = y + s
    if abs(y - s) > abs(big):
        big = y - s
    # |y + s| |y - s| = 4, so |lam1| >= 1
    lam1 = big / 2.0
    return lam1, 1.0 / lam1


def pure_palindromic_coeffs(P: PalindromicPolynomial) -> np.ndarray:
    """Dickson coefficients of ``Q(y) = P(lam(y))`` for symmetric ``A_j``."""
    A = P.coeffs
    for j in range(P.k + 1):
        scale = np.max(np.sum(np.abs(A[j]), axis=1))
        if np.max(np.abs(A[j] - A[j].T)) > 1e-12 * scale:
            raise NotPurelyPalindromic(f"A_{j} is not symmetric")
    Q = A.copy()
    Q[0] = A[0] / 2
    return Q


@dataclass(frozen=True)
class DicksonSystem:
    """Coefficients of ``M(y) = sum_{j=0}^{k+1} M_j phi_j(y)``.

    ``M_j = [[B_j, Ct_j], [C_j, B_j]]`` where ``B`` collects the symmetric
    part of ``P``, ``C`` the skew part divided by ``w = lam - 1/lam`` and
    ``Ct`` the expansion of ``(y^2 - 4) C(y)``.  All arrays have k+2
    entries; ``B_{k+1}``, ``C_k`` and ``C_{k+1}`` are zero.
    """

    n: int
    k: int
    M: np.ndarray
    B: np.ndarray
    C: np.ndarray
    Ctilde: np.ndarray

    def __call__(self, y) -> np.ndarray:
        return eval_dickson(self, y)


def dickson_transform(P: PalindromicPolynomial) -> DicksonSystem:
    n, k = P.n, P.k
    if k < 1:
        raise DegreeTooSmall("the transform needs k >= 1")
    A = P.coeffs
    At = np.transpose(A, (0, 2, 1))

    B = np.zeros((k + 2, n, n), dtype=complex)
    B[: k + 1] = (A + At) / 2
    B[0] = A[0] / 2
    Chat = (A - At) / 2

    # lam^j - lam^-j = w * (phi_{j-1} + phi_{j-3} + ...), ending in phi_0/2
    # for odd j: parity-wise suffix sums of the skew parts
    C = np.zeros((k + 2, n, n), dtype=complex)
    S = np.zeros((2, n, n), dtype=complex)
    for j in range(k, 0, -1):
        S[j % 2] += Chat[j]
        C[j - 1] = S[j % 2]
    C[0] /= 2

    # (y^2 - 4) = phi_2 - phi_0 with phi_2 phi_j = phi_{j+2} + phi_{|j-2|}
    Ct = np.zeros_like(C)
    for j in range(k):
        Ct[j + 2] += C[j]
        Ct[abs(j - 2)] += C[j]
        Ct[j] -= 2 * C[j]

    M = np.zeros((k + 2, 2 * n, 2 * n), dtype=complex)
    M[:, :n, :n] = B
    M[:, n:, n:] = B
    M[:, :n, n:] = Ct
    M[:, n:, :n] = C

    for arr in (M, B, C, Ct):
        arr.flags.writeable = False
    return DicksonSystem(n=n, k=k, M=M, B=B, C=C, Ctilde=Ct)


def eval_dickson(D: DicksonSystem, y) -> np.ndarray:
    """``sum_j M_j phi_j(y)`` as a dense ``2n x 2n`` matrix."""
    ph = phi_all(D.k + 1, complex(y))
    return np.tensordot(ph, D.M, axes=1)
