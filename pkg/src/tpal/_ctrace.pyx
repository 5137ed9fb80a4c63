# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled trace kernel; step-for-step twin of ``newton_trace._trace_python``."""

from libc.math cimport sqrt, hypot, isfinite
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef double ALPHA_FLOOR = 1e-300


cdef inline double cabs_(double complex z) noexcept nogil:
    return hypot(z.real, z.imag)


cdef inline double complex conj_(double complex z) noexcept nogil:
    return z.real - 1j * z.imag


cdef int lu_inplace(double complex* A, Py_ssize_t* piv, Py_ssize_t m) noexcept nogil:
    """Row-major LU with partial pivoting; returns 1 on an exactly zero pivot."""
    cdef Py_ssize_t i, j, r, p
    cdef double best, v
    cdef double complex t, f
    for j in range(m):
        p = j
        best = cabs_(A[j * m + j])
        for r in range(j + 1, m):
            v = cabs_(A[r * m + j])
            if v > best:
                best = v
                p = r
        piv[j] = p
        if best == 0.0:
            return 1
        if p != j:
            for i in range(m):
                t = A[j * m + i]
                A[j * m + i] = A[p * m + i]
                A[p * m + i] = t
        for r in range(j + 1, m):
            f = A[r * m + j] / A[j * m + j]
            A[r * m + j] = f
            for i in range(j + 1, m):
                A[r * m + i] -= f * A[j * m + i]
    return 0


cdef void lu_solve_inplace(const double complex* LU, const Py_ssize_t* piv, double complex* B,
                           Py_ssize_t m, Py_ssize_t nrhs) noexcept nogil:
    """Overwrite the row-major m x nrhs matrix B with LU^{-1} B."""
    cdef Py_ssize_t i, j, c
    cdef double complex t
    for i in range(m):
        if piv[i] != i:
            for c in range(nrhs):
                t = B[i * nrhs + c]
                B[i * nrhs + c] = B[piv[i] * nrhs + c]
                B[piv[i] * nrhs + c] = t
    for i in range(m):
        for j in range(i):
            t = LU[i * m + j]
            for c in range(nrhs):
                B[i * nrhs + c] -= t * B[j * nrhs + c]
    for i in range(m - 1, -1, -1):
        for j in range(i + 1, m):
            t = LU[i * m + j]
            for c in range(nrhs):
                B[i * nrhs + c] -= t * B[j * nrhs + c]
        t = LU[i * m + i]
        for c in range(nrhs):
            B[i * nrhs + c] /= t


cdef int trace_core(const double complex* M, Py_ssize_t k, Py_ssize_t m, double complex y,
                    double complex* eta_out, double* eta_hat_out) noexcept nogil:
    """Returns 0 on success, 1 if the pencil is singular at y, -1 on allocation failure."""
    cdef Py_ssize_t mm = m * m
    cdef Py_ssize_t j, e, i, c
    cdef int status = 0
    cdef double r, rowsum, best
    cdef double complex g11, g12, g21, g22, a, b, bt, t, s, tr

    cdef double complex* W = <double complex*> malloc((k + 1) * mm * sizeof(double complex))
    cdef double complex* X = <double complex*> malloc(k * mm * sizeof(double complex))
    cdef double complex* rhs = <double complex*> malloc(2 * mm * sizeof(double complex))
    cdef double complex* vec = <double complex*> malloc((6 * k + 3) * sizeof(double complex))
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(m * sizeof(Py_ssize_t))
    if W == NULL or X == NULL or rhs == NULL or vec == NULL or piv == NULL:
        free(W); free(X); free(rhs); free(vec); free(piv)
        return -1

    cdef double complex* alpha = vec
    cdef double complex* beta = vec + (k + 1)
    cdef double complex* chi = vec + 2 * (k + 1)
    cdef double complex* gamma = vec + 3 * (k + 1)
    cdef double complex* cq = gamma + k
    cdef double complex* psi = cq + k
    cdef const double complex* Mk1 = M + (k + 1) * mm
    cdef double complex* Wk

    memcpy(W, M, (k + 1) * mm * sizeof(double complex))
    for e in range(mm):
        W[(k - 1) * mm + e] -= Mk1[e]
        W[k * mm + e] += y * Mk1[e]

    for j in range(k + 1):
        alpha[j] = y
        beta[j] = -1.0
        chi[j] = -1.0
    chi[0] = -2.0
    for j in range(k):
        gamma[j] = 0.0

    for j in range(k):
        a = alpha[j]
        b = chi[j]
        r = hypot(cabs_(a), cabs_(b))
        if r == 0.0:
            g11 = 1.0; g12 = 0.0; g21 = 0.0; g22 = 1.0
        else:
            g11 = conj_(a) / r; g12 = -b / r; g21 = conj_(b) / r; g22 = a / r
        cq[j] = g11
        psi[j] = g12
        alpha[j] = a * g11 + b * g21
        bt = beta[j] * g11 + alpha[j + 1] * g21
        alpha[j + 1] = beta[j] * g12 + alpha[j + 1] * g22
        beta[j] = bt
        gamma[j] = beta[j + 1] * g21
        beta[j + 1] = beta[j + 1] * g22
        for e in range(mm):
            t = g11 * W[j * mm + e] + g21 * W[(j + 1) * mm + e]
            W[(j + 1) * mm + e] = g12 * W[j * mm + e] + g22 * W[(j + 1) * mm + e]
            W[j * mm + e] = t

    for j in range(k):
        if cabs_(alpha[j]) < ALPHA_FLOOR:
            status = 1
    if status:
        free(W); free(X); free(rhs); free(vec); free(piv)
        return 1

    for j in range(k - 1):
        beta[j] = beta[j] * psi[j]
    for j in range(k - 2):
        gamma[j] = gamma[j] * psi[j] * psi[j + 1]
    s = 1.0
    for j in range(k - 1, -1, -1):
        s = s * psi[j]
        for e in range(mm):
            W[j * mm + e] *= s

    Wk = W + k * mm
    for e in range(mm):
        X[(k - 1) * mm + e] = (cq[k - 1] * Wk[e] - W[(k - 1) * mm + e]) / alpha[k - 1]
    if k >= 2:
        for e in range(mm):
            X[(k - 2) * mm + e] = (cq[k - 2] * Wk[e] - W[(k - 2) * mm + e]
                                   - beta[k - 2] * X[(k - 1) * mm + e]) / alpha[k - 2]
    for j in range(k - 3, -1, -1):
        for e in range(mm):
            X[j * mm + e] = (cq[j] * Wk[e] - W[j * mm + e] - beta[j] * X[(j + 1) * mm + e]
                             - gamma[j] * X[(j + 2) * mm + e]) / alpha[j]

    # right-hand side [Mt | I], row-major m x 2m
    for i in range(m):
        for c in range(m):
            e = i * m + c
            t = X[e]
            for j in range(k - 1):
                t = t + conj_(cq[j]) * X[(j + 1) * mm + e]
            t = t + conj_(cq[k - 1]) * Mk1[e]
            rhs[i * 2 * m + c] = t
            rhs[i * 2 * m + m + c] = 1.0 if i == c else 0.0

    if lu_inplace(Wk, piv, m):
        status = 1
    else:
        lu_solve_inplace(Wk, piv, rhs, m, 2 * m)
        tr = 0.0
        best = 0.0
        for i in range(m):
            tr = tr + rhs[i * 2 * m + i]
            rowsum = 0.0
            for c in range(m):
                rowsum += cabs_(rhs[i * 2 * m + m + c])
            if rowsum > best or not isfinite(rowsum):
                best = rowsum
        if not (isfinite(tr.real) and isfinite(tr.imag) and isfinite(best)):
            status = 1
        else:
            eta_out[0] = tr
            eta_hat_out[0] = sqrt(<double> m) / (best * (1.0 + cabs_(y)))

    free(W); free(X); free(rhs); free(vec); free(piv)
    return status


def trace_kernel(const double complex[:, :, ::1] M, double complex y):
    """Return ``(eta, eta_hat, singular)`` for the Dickson coefficients ``M``.

    ``M`` has shape ``(k+2, 2n, 2n)`` and is only read.
    """
    cdef Py_ssize_t k = M.shape[0] - 2
    cdef Py_ssize_t m = M.shape[1]
    cdef double complex eta = 0.0
    cdef double eta_hat = 0.0
    cdef int status
    if k < 1 or M.shape[2] != m:
        raise ValueError("expected an array of shape (k+2, 2n, 2n) with k >= 1")
    with nogil:
        status = trace_core(&M[0, 0, 0], k, m, y, &eta, &eta_hat)
    if status < 0:
        raise MemoryError()
    if status:
        return complex("nan"), 0.0, True
    return eta, eta_hat, False
