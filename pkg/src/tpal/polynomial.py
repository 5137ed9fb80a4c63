"""T-palindromic matrix polynomials in Laurent form.

A polynomial of even degree ``2k`` whose coefficients satisfy
``A_{-j} = A_j^T`` is stored through its nonnegative-index half
``A_0, ..., A_k``; the negative side is always recovered by transposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeParity, NotPalindromic, ShapeMismatch, ZeroArgument


def _as_block_stack(mats, what="coefficients"):
    try:
        arr = np.array([np.asarray(m, dtype=complex) for m in mats])
    except ValueError as exc:
        raise ShapeMismatch(f"{what} have inconsistent shapes") from exc
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2] or arr.shape[1] == 0:
        raise ShapeMismatch(f"{what} must be a sequence of square n x n matrices, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contain non-finite entries")
    return arr


@dataclass(frozen=True)
class PalindromicPolynomial:
    """``P(lam) = A_0 + sum_{j=1}^k (A_j lam^j + A_j^T lam^-j)``.

    Parameters
    ----------
    coeffs : array_like, shape (k+1, n, n)
        The coefficients ``A_0, ..., A_k``.
    synthetic_count : int
        Number of eigenvalues at ``lam = -1`` introduced artificially by
        :func:`odd_to_even`; the solver pins them instead of computing them.

    ``A_0`` must be symmetric (it is its own partner ``A_{-0}^T``).  An
    asymmetry below ``1e-12 max|A_0|`` is rounded away; anything larger
    raises :class:`NotPalindromic`.
    """

    coeffs: np.ndarray
    synthetic_count: int = 0

    def __post_init__(self):
        arr = _as_block_stack(self.coeffs)
        if arr.shape[0] < 2:
            raise ShapeMismatch("need at least A_0 and A_1 (k >= 1)")
        if self.synthetic_count < 0:
            raise ValueError("synthetic_count must be nonnegative")
        A0 = arr[0]
        dev = float(np.max(np.abs(A0 - A0.T)))
        if dev > 0.0:
            tol = 1e-12 * float(np.max(np.abs(A0)))
            if dev > tol:
                raise NotPalindromic(0, dev, tol)
            arr[0] = (A0 + A0.T) / 2
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    @property
    def k(self) -> int:
        return self.coeffs.shape[0] - 1

    def full_coefficients(self) -> list[np.ndarray]:
        """Return ``[A_{-k}, ..., A_0, ..., A_k]``."""
        neg = [self.coeffs[j].T for j in range(self.k, 0, -1)]
        return neg + list(self.coeffs)

    def __call__(self, lam):
        return eval_laurent(self, lam)


def from_full_coefficients(full, tol=0.0) -> PalindromicPolynomial:
    """Build the half-stored form from ``A_{-k}, ..., A_k``.

    ``tol`` is an absolute entrywise tolerance on ``A_{-j} - A_j^T``; the
    default demands exact equality.
    """
    arr = _as_block_stack(full)
    m = arr.shape[0]
    if m % 2 == 0 or m < 3:
        raise ShapeMismatch(f"expected 2k+1 >= 3 coefficients, got {m}")
    k = m // 2
    for j in range(k + 1):
        dev = float(np.max(np.abs(arr[k - j] - arr[k + j].T)))
        if dev > tol:
            raise NotPalindromic(j, dev, tol)
    return PalindromicPolynomial(arr[k:].copy())


def eval_laurent(P: PalindromicPolynomial, lam) -> np.ndarray:
    """Evaluate ``P(lam)`` with one Horner pass in ``lam`` and one in ``1/lam``."""
    lam = complex(lam)
    if lam == 0:
        raise ZeroArgument("P(lam) is undefined at lam = 0")
    A = P.coeffs
    mu = 1.0 / lam
    pos = A[P.k].copy()
    neg = A[P.k].T.copy()
    for j in range(P.k - 1, 0, -1):
        pos = pos * lam + A[j]
        neg = neg * mu + A[j].T
    return A[0] + pos * lam + neg * mu


def odd_to_even(P_odd, tol=0.0) -> PalindromicPolynomial:
    """Turn an odd-degree T-palindromic polynomial into an even one.

    ``P_odd`` holds the standard coefficients ``P_0, ..., P_d`` (``d`` odd,
    ``P_j = P_{d-j}^T``). The result is the Laurent form of
    ``(lam + 1) P(lam) / lam^((d+1)/2)``, which carries ``n`` extra
    eigenvalues at ``-1``; they are recorded in ``synthetic_count``.
    """
    arr = _as_block_stack(P_odd)
    d = arr.shape[0] - 1
    if d % 2 == 0:
        raise DegreeParity(f"odd_to_even needs an odd degree, got d = {d}")
    for j in range((d + 1) // 2):
        dev = float(np.max(np.abs(arr[j] - arr[d - j].T)))
        if dev > tol:
            raise NotPalindromic(d - j, dev, tol)
    n = arr.shape[1]
    prod = np.zeros((d + 2, n, n), dtype=complex)
    prod[1:] += arr
    prod[:-1] += arr
    k = (d + 1) // 2
    return PalindromicPolynomial(prod[k:], synthetic_count=n)


def gen_h(n: int, k: int) -> PalindromicPolynomial:
    """The test family with ``A_0 = 0`` and ``A_j = I + e_n e_1^T``.

    For ``n = 1`` the rank-one term is dropped so that the family reduces
    to the scalar ``h(lam) = sum_j (lam^j + lam^-j)``.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    A = np.eye(n, dtype=complex)
    if n > 1:
        A[n - 1, 0] += 1.0
    coeffs = np.zeros((k + 1, n, n), dtype=complex)
    coeffs[1:] = A
    return PalindromicPolynomial(coeffs)


def gen_random(n: int, k: int, seed: int) -> PalindromicPolynomial:
    """Random coefficients with real and imaginary parts uniform on [-1, 1).

    Draws come from numpy's PCG64 bit generator seeded with ``seed``, real
    parts of every ``A_j`` first and then imaginary parts.  ``A_0`` is then
    replaced by its symmetric part, which keeps entries inside the range.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    re = rng.uniform(-1.0, 1.0, size=(k + 1, n, n))
    im = rng.uniform(-1.0, 1.0, size=(k + 1, n, n))
    A = re + 1j * im
    A[0] = (A[0] + A[0].T) / 2
    return PalindromicPolynomial(A)
