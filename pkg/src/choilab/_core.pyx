# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled see-saw and product-state kernels.

Same contract as ``_core_py``. Eigenproblems go through LAPACK ``zheev``
from scipy's Cython bindings; factor dimensions are capped at ``MAXD``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, INFINITY
from scipy.linalg.cython_lapack cimport zheev

cnp.import_array()

cdef enum:
    MAXD = 16

ctypedef double complex cplx


cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex conj(double complex)


cdef int _min_eig(cplx* a, int n, double* val, cplx* out) noexcept nogil:
    # a: column-major n x n Hermitian, destroyed on exit
    cdef double w[MAXD]
    cdef cplx work[4 * MAXD]
    cdef double rwork[3 * MAXD]
    cdef int lwork = 4 * MAXD
    cdef int info = 0
    cdef int lda = n
    cdef int i
    cdef double thresh, mx
    cdef cplx ph
    zheev(b"V", b"U", &n, a, &lda, w, work, &lwork, rwork, &info)
    val[0] = w[0]
    mx = 0.0
    for i in range(n):
        if cabs(a[i]) > mx:
            mx = cabs(a[i])
    thresh = 1e-12 * (mx if mx > 1.0 else 1.0)
    ph = 1.0
    for i in range(n):
        if cabs(a[i]) > thresh:
            ph = cabs(a[i]) / a[i]
            break
    for i in range(n):
        out[i] = a[i] * ph
    return info


cdef void _contract_y(const cplx[:, ::1] rho, int d_a, int d_b, const cplx* y, cplx* m) noexcept nogil:
    # m[i + j*d_a] = sum_kl conj(y_k) rho[i*d_b+k, j*d_b+l] y_l, then Hermitian-symmetrised
    cdef int i, j, k, l
    cdef cplx s, t
    for i in range(d_a):
        for j in range(d_a):
            s = 0
            for k in range(d_b):
                t = 0
                for l in range(d_b):
                    t = t + rho[i * d_b + k, j * d_b + l] * y[l]
                s = s + conj(y[k]) * t
            m[i + j * d_a] = s
    for i in range(d_a):
        for j in range(i, d_a):
            s = 0.5 * (m[i + j * d_a] + conj(m[j + i * d_a]))
            m[i + j * d_a] = s
            m[j + i * d_a] = conj(s)


cdef void _contract_x(const cplx[:, ::1] rho, int d_a, int d_b, const cplx* x, cplx* m) noexcept nogil:
    cdef int i, j, k, l
    cdef cplx s, t
    for k in range(d_b):
        for l in range(d_b):
            s = 0
            for i in range(d_a):
                t = 0
                for j in range(d_a):
                    t = t + rho[i * d_b + k, j * d_b + l] * x[j]
                s = s + conj(x[i]) * t
            m[k + l * d_b] = s
    for k in range(d_b):
        for l in range(k, d_b):
            s = 0.5 * (m[k + l * d_b] + conj(m[l + k * d_b]))
            m[k + l * d_b] = s
            m[l + k * d_b] = conj(s)


def seesaw(rho, int d_a, int d_b, y0, int max_iters, double eps):
    """Alternating minimisation of ``<x (x) y| rho |x (x) y>``; one run per row of ``y0``."""
    if d_a > MAXD or d_b > MAXD:
        raise ValueError("factor dimension exceeds compiled limit")
    cdef const cplx[:, ::1] r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const cplx[:, ::1] starts = np.ascontiguousarray(y0, dtype=np.complex128)
    cdef int n = starts.shape[0]
    values_a = np.empty(n, dtype=np.float64)
    xs_a = np.zeros((n, d_a), dtype=np.complex128)
    ys_a = np.zeros((n, d_b), dtype=np.complex128)
    iters_a = np.empty(n, dtype=np.int64)
    cdef double[::1] values = values_a
    cdef cplx[:, ::1] xs = xs_a
    cdef cplx[:, ::1] ys = ys_a
    cdef cnp.int64_t[::1] iters = iters_a
    cdef cplx m[MAXD * MAXD]
    cdef cplx x[MAXD]
    cdef cplx y[MAXD]
    cdef double f, f_prev, lam, nrm
    cdef int s, i, it, info
    with nogil:
        for s in range(n):
            nrm = 0.0
            for i in range(d_b):
                nrm = nrm + cabs(starts[s, i]) ** 2
            nrm = sqrt(nrm)
            for i in range(d_b):
                y[i] = starts[s, i] / nrm
            for i in range(d_a):
                x[i] = 0
            f_prev = INFINITY
            f = INFINITY
            it = 0
            while it < max_iters:
                it += 1
                _contract_y(r, d_a, d_b, y, m)
                info = _min_eig(m, d_a, &lam, x)
                _contract_x(r, d_a, d_b, x, m)
                info = _min_eig(m, d_b, &f, y)
                if fabs(f_prev - f) < eps:
                    break
                f_prev = f
            values[s] = f
            iters[s] = it
            for i in range(d_a):
                xs[s, i] = x[i]
            for i in range(d_b):
                ys[s, i] = y[i]
    return values_a, xs_a, ys_a, iters_a


def product_expectations(rho, int d_a, int d_b, xs, ys):
    """``out[p, q] = Re <x_p (x) y_q| rho |x_p (x) y_q>``."""
    cdef const cplx[:, ::1] r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const cplx[:, ::1] xv = np.ascontiguousarray(xs, dtype=np.complex128)
    cdef const cplx[:, ::1] yv = np.ascontiguousarray(ys, dtype=np.complex128)
    cdef int np_ = xv.shape[0], nq = yv.shape[0]
    out_a = np.empty((np_, nq), dtype=np.float64)
    cdef double[:, ::1] out = out_a
    cdef int p, q, i, j, k, l
    cdef cplx acc, row
    with nogil:
        for p in range(np_):
            for q in range(nq):
                acc = 0
                for i in range(d_a):
                    for k in range(d_b):
                        row = 0
                        for j in range(d_a):
                            for l in range(d_b):
                                row = row + r[i * d_b + k, j * d_b + l] * xv[p, j] * yv[q, l]
                        acc = acc + conj(xv[p, i] * yv[q, k]) * row
                out[p, q] = acc.real
    return out_a
