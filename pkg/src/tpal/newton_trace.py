"""Logarithmic derivative of ``det M(y)`` through the Jacobi formula.

``(det M)'/det M = trace(L(y)^{-1} E)`` is obtained from a block LQ
factorization of the pencil computed with ``k`` Givens rotations acting on
scalar-times-identity blocks, followed by a banded back substitution and a
single ``2n x 2n`` solve.  Cost per evaluation is ``O(n^2 k + n^3)``.

Two interchangeable kernels are provided: a compiled one in
:mod:`tpal._ctrace` and the numpy implementation below.  The compiled
kernel is used when importable; :func:`set_backend` overrides the choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg.lapack import zgetrf, zgetrs

from .dickson import DicksonSystem

try:
    from ._ctrace import trace_kernel as _c_trace_kernel
except ImportError:  # extension not built
    _c_trace_kernel = None

ALPHA_FLOOR = 1e-300

_backend = "cython" if _c_trace_kernel is not None else "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _c_trace_kernel is not None else [])


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Select ``"python"`` or ``"cython"`` for subsequent trace evaluations."""
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    _backend = name


@dataclass(frozen=True)
class NewtonStep:
    """Result of one trace evaluation.

    ``eta`` is ``(det M)'/det M`` (twice the logarithmic derivative of the
    scalar ``p``), ``eta_hat`` the backward-error estimate
    ``sqrt(2n) / (||Mhat_k^{-1}||_inf (1 + |y|))``.  ``singular`` marks a
    breakdown of the factorization, i.e. ``y`` is numerically an eigenvalue;
    ``eta`` is then nan and ``eta_hat`` zero.
    """

    eta: complex
    eta_hat: float
    singular: bool = False


def planerot(a: complex, b: complex):
    """Entries ``(g11, g12, g21, g22)`` of the unitary ``G`` with ``[a, b] G = [r, 0]``.

    ``G`` is the transpose of the rotation mapping the column ``[a; b]`` to
    ``[r; 0]`` with ``r = hypot(|a|, |b|)`` real and nonnegative.  A zero
    vector gives the identity.
    """
    r = math.hypot(abs(a), abs(b))
    if r == 0.0:
        return 1.0 + 0j, 0j, 0j, 1.0 + 0j
    return a.conjugate() / r, -b / r, b.conjugate() / r, a / r


def _trace_python(M: np.ndarray, y: complex):
    k = M.shape[0] - 2
    m = M.shape[1]
    W = np.array(M[: k + 1])
    Mk1 = M[k + 1]
    W[k - 1] -= Mk1
    W[k] += y * Mk1

    alpha = np.full(k + 1, y, dtype=complex)
    beta = np.full(k + 1, -1.0, dtype=complex)
    gamma = np.zeros(k, dtype=complex)
    chi = np.full(k + 1, -1.0, dtype=complex)
    chi[0] = -2.0
    c = np.empty(k, dtype=complex)
    psi = np.empty(k, dtype=complex)

    for j in range(k):
        g11, g12, g21, g22 = planerot(complex(alpha[j]), complex(chi[j]))
        c[j], psi[j] = g11, g12
        alpha[j] = alpha[j] * g11 + chi[j] * g21
        bt = beta[j] * g11 + alpha[j + 1] * g21
        alpha[j + 1] = beta[j] * g12 + alpha[j + 1] * g22
        beta[j] = bt
        gamma[j] = beta[j + 1] * g21
        beta[j + 1] = beta[j + 1] * g22
        t = g11 * W[j] + g21 * W[j + 1]
        W[j + 1] = g12 * W[j] + g22 * W[j + 1]
        W[j] = t

    if np.any(np.abs(alpha[:k]) < ALPHA_FLOOR):
        return complex("nan"), 0.0, True

    # balance by D = diag(1, psi_1, psi_1 psi_2, ...)
    beta[: k - 1] *= psi[: k - 1]
    gamma[: k - 2] *= psi[: k - 2] * psi[1 : k - 1]
    s = 1.0 + 0j
    for j in range(k - 1, -1, -1):
        s *= psi[j]
        W[j] *= s

    Wk = W[k]
    X = np.empty((k, m, m), dtype=complex)
    X[k - 1] = (c[k - 1] * Wk - W[k - 1]) / alpha[k - 1]
    if k >= 2:
        X[k - 2] = (c[k - 2] * Wk - W[k - 2] - beta[k - 2] * X[k - 1]) / alpha[k - 2]
    for j in range(k - 3, -1, -1):
        X[j] = (c[j] * Wk - W[j] - beta[j] * X[j + 1] - gamma[j] * X[j + 2]) / alpha[j]

    Mt = X[0] + np.tensordot(c[: k - 1].conj(), X[1:], axes=1) + c[k - 1].conjugate() * Mk1

    lu, piv, info = zgetrf(Wk)
    if info != 0:
        return complex("nan"), 0.0, True
    sol, info = zgetrs(lu, piv, np.hstack([Mt, np.eye(m)]))
    if info != 0 or not np.all(np.isfinite(sol)):
        return complex("nan"), 0.0, True
    eta = complex(np.trace(sol[:, :m]))
    inv_norm = float(np.max(np.sum(np.abs(sol[:, m:]), axis=1)))
    eta_hat = math.sqrt(m) / (inv_norm * (1.0 + abs(y)))
    return eta, eta_hat, False


def trace_correction(D: DicksonSystem, y, backend: str | None = None) -> NewtonStep:
    """Evaluate ``(det M)'/det M`` and the backward-error estimate at ``y``.

    ``D`` is never modified; the kernel works on private copies.
    """
    y = complex(y)
    name = backend or _backend
    if name == "cython":
        if _c_trace_kernel is None:
            raise ValueError("compiled kernel unavailable")
        eta, eta_hat, singular = _c_trace_kernel(D.M, y)
    elif name == "python":
        eta, eta_hat, singular = _trace_python(D.M, y)
    else:
        raise ValueError(f"unknown backend {name!r}")
    return NewtonStep(complex(eta), float(eta_hat), bool(singular))
