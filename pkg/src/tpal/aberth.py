"""Ehrlich-Aberth iteration on the Dickson roots ``y = lam + 1/lam``.

The ``N = nk`` roots of ``p(y)``, where ``det M(y) = p(y)^2``, are refined
simultaneously.  Each Newton correction ``p/p' = 2 / ((det M)'/det M)`` comes
from :func:`tpal.newton_trace.trace_correction`, which also delivers the
backward-error estimate used as stopping criterion.  Each root ``y`` is
finally expanded into the reciprocal pair ``(lam, 1/lam)``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dickson import dickson_transform, recover_lambda_pair
from .errors import InvalidConfig, TransformFailure
from .newton_trace import trace_correction
from .polynomial import PalindromicPolynomial

log = logging.getLogger(__name__)

DIVERGED_MODULUS = 1e8


@dataclass(frozen=True)
class StartConfig:
    """Starting-point parameters.

    ``a`` is the number of ellipse classes, ``b`` tunes their semi-axes and
    ``seed`` drives the random phase shared by all points.
    """

    a: int
    b: int
    seed: int = 0

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise InvalidConfig(f"a and b must be positive, got a={self.a}, b={self.b}")
        if self.a > self.b:
            raise InvalidConfig(f"need a <= b so that every ellipse is nondegenerate, got a={self.a}, b={self.b}")


def starting_points(N: int, cfg: StartConfig, phase: float | None = None) -> np.ndarray:
    """Points on the Dickson images of the circles ``|lam| = 1 - jj/b``.

    ``phase`` overrides the random rotation drawn from ``cfg.seed``.
    """
    if N < 1:
        return np.empty(0, dtype=complex)
    if phase is None:
        phase = float(np.random.Generator(np.random.PCG64(cfg.seed)).standard_normal())
    theta = 2 * math.pi / N
    j = np.arange(1, N + 1)
    rho = 1.0 - (j % cfg.a) / cfg.b
    major = rho + 1 / rho
    minor = 1 / rho - rho
    ang = j * theta + phase
    return major * np.cos(ang) + 1j * minor * np.sin(ang)


def choose_params(N: int, n: int, k: int, seed: int = 0) -> StartConfig:
    c = max(0, round(math.log(N) / math.log(320))) if N > 0 else 0
    if k >= n:
        return StartConfig(1 + 2**c, 8 ** (c + 1), seed)
    return StartConfig(1 + 5 * 2**c, 6 * 2**c, seed)


@dataclass(frozen=True)
class RootRecord:
    value: complex
    eta_hat: float
    sweeps_used: int
    status: str  # "converged", "maxit" or "synthetic"
    # "converged" always means eta_hat <= tol; a root frozen by the step-size
    # test with a larger estimate is reported as "maxit"


@dataclass
class SpectrumResult:
    """Dickson roots and the eigenvalues they expand to.

    ``lambdas[2j]`` and ``lambdas[2j+1]`` are the reciprocal pair generated by
    ``y_roots[j]``; ``lambda_status`` is the per-eigenvalue status.
    """

    y_roots: list[RootRecord]
    lambdas: np.ndarray
    lambda_status: list[str]
    sweeps: int
    trace_calls: int
    diverged: int = 0
    history: list[np.ndarray] | None = None
    start: np.ndarray = field(default=None, repr=False)

    @property
    def converged(self) -> bool:
        return all(r.status != "maxit" for r in self.y_roots)


def _aberth_step(z: np.ndarray, j: int, eta: complex) -> complex:
    # h = Nc / (1 + Nc S) with Nc = 2/eta, rewritten to survive eta = 0
    diff = z - z[j]
    diff[j] = np.inf
    with np.errstate(divide="ignore"):
        S = np.sum(1.0 / diff)
    den = 0.5 * eta + S
    if den == 0 or not np.isfinite(den):
        return 0j
    return 1.0 / den


def solve(
    P: PalindromicPolynomial,
    tol: float = 1e-13,
    maxit: int | None = None,
    cfg: StartConfig | None = None,
    record_history: bool = False,
    jacobi: bool = False,
    workers: int | None = None,
    backend: str | None = None,
) -> SpectrumResult:
    """All ``2nk`` eigenvalues of ``P`` by the Ehrlich-Aberth iteration.

    Parameters
    ----------
    P : PalindromicPolynomial
    tol : float
        A root is frozen once the backward-error estimate at its new
        position, or its last correction relative to its modulus, drops
        below ``tol``.  Only the first test earns status ``"converged"``.
    maxit : int, optional
        Maximum number of sweeps, default ``2nk``.
    cfg : StartConfig, optional
        Defaults to :func:`choose_params`.
    record_history : bool
        Keep a snapshot of all approximations after every sweep.
    jacobi : bool
        Compute every correction of a sweep from the same snapshot instead
        of using updated values immediately.  Enables ``workers`` threads
        for the trace evaluations; changes iteration counts.
    backend : {"python", "cython"}, optional
        Trace kernel override.

    Notes
    -----
    Deflated roots keep contributing to the repulsion sums.  When ``P``
    came from :func:`tpal.polynomial.odd_to_even`, roots at ``y = -2``
    covering its ``synthetic_count`` artificial eigenvalues are pinned and
    never corrected.
    """
    n, k = P.n, P.k
    N = n * k
    if maxit is None:
        maxit = 2 * n * k
    if cfg is None:
        cfg = choose_params(N, n, k)
    try:
        D = dickson_transform(P)
    except Exception as exc:
        raise TransformFailure(str(exc)) from exc

    # each y = -2 root stands for two eigenvalues lam = -1
    pinned = min(N, (P.synthetic_count + 1) // 2)
    n_active = N - pinned
    z = np.concatenate([starting_points(n_active, cfg), np.full(pinned, -2.0 + 0j)])
    start = z.copy()
    active = np.zeros(N, dtype=bool)
    active[:n_active] = True
    status = ["converged"] * n_active + ["synthetic"] * pinned
    eta = np.zeros(N, dtype=complex)
    eta_hat = np.zeros(N)
    used = np.zeros(N, dtype=int)
    calls = 0

    def evaluate(idx):
        return [trace_correction(D, z[i], backend) for i in idx]

    pool = ThreadPoolExecutor(workers) if (jacobi and workers and workers > 1) else None

    def evaluate_many(idx):
        if pool is None or len(idx) < 2:
            return evaluate(idx)
        return list(pool.map(lambda i: trace_correction(D, z[i], backend), idx))

    def absorb(i, step):
        eta_hat[i] = step.eta_hat
        if step.singular:
            active[i] = False
            return
        eta[i] = step.eta

    try:
        idx = list(np.flatnonzero(active))
        for i, step in zip(idx, evaluate_many(idx)):
            absorb(i, step)
        calls += len(idx)

        history = [z.copy()] if record_history else None
        sweeps = 0
        while sweeps < maxit and active.any():
            sweeps += 1
            if jacobi:
                idx = list(np.flatnonzero(active))
                snap = z.copy()
                steps = {i: _aberth_step(snap, i, eta[i]) for i in idx}
                for i in idx:
                    z[i] = snap[i] - steps[i]
                    used[i] += 1
                results = evaluate_many(idx)
                calls += len(idx)
                for i, step in zip(idx, results):
                    absorb(i, step)
                    if active[i] and (step.eta_hat <= tol or abs(steps[i]) <= tol * abs(z[i])):
                        active[i] = False
            else:
                for i in range(N):
                    if not active[i]:
                        continue
                    h = _aberth_step(z, i, eta[i])
                    z[i] -= h
                    used[i] += 1
                    step = trace_correction(D, z[i], backend)
                    calls += 1
                    absorb(i, step)
                    if active[i] and (step.eta_hat <= tol or abs(h) <= tol * abs(z[i])):
                        active[i] = False
            if record_history:
                history.append(z.copy())
    finally:
        if pool is not None:
            pool.shutdown()

    for i in range(n_active):
        if active[i] or eta_hat[i] > tol:
            status[i] = "maxit"
    diverged = int(np.sum(np.abs(z) > DIVERGED_MODULUS))
    if diverged:
        log.info("%d approximations exceeded modulus %.0e", diverged, DIVERGED_MODULUS)

    records = [
        RootRecord(complex(z[i]), float(eta_hat[i]) if status[i] != "synthetic" else float("nan"),
                   int(used[i]), status[i])
        for i in range(N)
    ]
    lambdas = np.empty(2 * N, dtype=complex)
    lam_status = []
    synthetic_left = P.synthetic_count
    for i in range(N):
        lambdas[2 * i], lambdas[2 * i + 1] = recover_lambda_pair(z[i])
        if status[i] == "synthetic":
            # an odd count leaves one genuine lam = -1 inside the last pinned pair
            for _ in range(2):
                lam_status.append("synthetic" if synthetic_left > 0 else "converged")
                synthetic_left -= 1
        else:
            lam_status += [status[i], status[i]]

    return SpectrumResult(
        y_roots=records,
        lambdas=lambdas,
        lambda_status=lam_status,
        sweeps=sweeps,
        trace_calls=calls,
        diverged=diverged,
        history=history,
        start=start,
    )
