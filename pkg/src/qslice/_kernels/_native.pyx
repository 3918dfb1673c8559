# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend; contracts mirror `_numpy` exactly."""

import numpy as np

from libc.math cimport sqrt

BACKEND = "native"


cdef inline void _qmul(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2]
    out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1]
    out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]


def star_convolve(a_in, b_in):
    a_arr = np.ascontiguousarray(a_in, dtype=np.float64)
    b_arr = np.ascontiguousarray(b_in, dtype=np.float64)
    cdef Py_ssize_t m = a_arr.shape[0]
    cdef Py_ssize_t n = b_arr.shape[0]
    if m == 0 or n == 0:
        return np.zeros((0, 4), dtype=np.float64)
    out_arr = np.zeros((m + n - 1, 4), dtype=np.float64)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] b = b_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double t[4]
    with nogil:
        for i in range(m):
            for j in range(n):
                _qmul(&a[i, 0], &b[j, 0], t)
                out[i + j, 0] += t[0]
                out[i + j, 1] += t[1]
                out[i + j, 2] += t[2]
                out[i + j, 3] += t[3]
    return out_arr


def poly_eval(coeffs_in, pts_in):
    coeffs_arr = np.ascontiguousarray(coeffs_in, dtype=np.float64)
    pts_arr = np.ascontiguousarray(pts_in, dtype=np.float64)
    cdef Py_ssize_t d = coeffs_arr.shape[0]
    cdef Py_ssize_t n_pts = pts_arr.shape[0]
    out_arr = np.zeros((n_pts, 4), dtype=np.float64)
    if d == 0:
        return out_arr
    cdef double[:, ::1] c = coeffs_arr
    cdef double[:, ::1] pts = pts_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double acc[4]
    cdef double t[4]
    with nogil:
        for i in range(n_pts):
            acc[0] = c[d - 1, 0]
            acc[1] = c[d - 1, 1]
            acc[2] = c[d - 1, 2]
            acc[3] = c[d - 1, 3]
            for k in range(d - 2, -1, -1):
                _qmul(&pts[i, 0], acc, t)
                acc[0] = c[k, 0] + t[0]
                acc[1] = c[k, 1] + t[1]
                acc[2] = c[k, 2] + t[2]
                acc[3] = c[k, 3] + t[3]
            out[i, 0] = acc[0]
            out[i, 1] = acc[1]
            out[i, 2] = acc[2]
            out[i, 3] = acc[3]
    return out_arr


def laurent_eval(double px, double py, iunit_in, junit_in, alpha_in, beta_in,
                 long nmin, pts_in, double sing_tol):
    iunit_arr = np.ascontiguousarray(iunit_in, dtype=np.float64)
    junit_arr = np.ascontiguousarray(junit_in, dtype=np.float64)
    alpha_arr = np.ascontiguousarray(alpha_in, dtype=np.complex128)
    beta_arr = np.ascontiguousarray(beta_in, dtype=np.complex128)
    pts_arr = np.ascontiguousarray(pts_in, dtype=np.float64)
    kunit_arr = np.empty(4, dtype=np.float64)
    cdef double[::1] iu = iunit_arr
    cdef double[::1] ju = junit_arr
    cdef double[::1] ku = kunit_arr
    _qmul(&iu[0], &ju[0], &ku[0])

    cdef Py_ssize_t n_pts = pts_arr.shape[0]
    cdef Py_ssize_t length = alpha_arr.shape[0]
    cdef long nmax = nmin + length - 1
    out_arr = np.empty((n_pts, 4), dtype=np.float64)

    cdef double complex[::1] alpha = alpha_arr
    cdef double complex[::1] beta = beta_arr
    cdef double[:, ::1] pts = pts_arr
    cdef double[:, ::1] out = out_arr

    cdef Py_ssize_t i
    cdef long n, m, mdepth
    cdef double x, y, dot
    cdef double jq[3]
    cdef double a_half[4]
    cdef double b_half[4]
    cdef double val_z[4]
    cdef double val_zbar[4]
    cdef double t1v[4]
    cdef double t2v[4]
    cdef double complex w1, w2, u1, u2, f1, g1, f2, g2, s1, t1, s2, t2
    cdef double complex cj = 1j
    cdef double nan = float("nan")
    mdepth = -nmin if nmin < 0 else 0

    with nogil:
        for i in range(n_pts):
            x = pts[i, 0]
            y = sqrt(pts[i, 1] * pts[i, 1] + pts[i, 2] * pts[i, 2] + pts[i, 3] * pts[i, 3])
            if y > 0.0:
                jq[0] = pts[i, 1] / y
                jq[1] = pts[i, 2] / y
                jq[2] = pts[i, 3] / y
            else:
                jq[0] = iu[1]
                jq[1] = iu[2]
                jq[2] = iu[3]
            w1 = (x - px) + cj * (y - py)
            w2 = (x - px) + cj * (-y - py)

            if mdepth > 0 and abs(w1) <= sing_tol:
                out[i, 0] = nan
                out[i, 1] = nan
                out[i, 2] = nan
                out[i, 3] = nan
                continue

            f1 = 0
            g1 = 0
            f2 = 0
            g2 = 0
            if nmax >= 0:
                for n in range(nmax, -1, -1):
                    f1 = f1 * w1 + alpha[n - nmin]
                    g1 = g1 * w1 + beta[n - nmin]
                    f2 = f2 * w2 + alpha[n - nmin]
                    g2 = g2 * w2 + beta[n - nmin]
            if mdepth > 0:
                u1 = 1.0 / w1
                u2 = 1.0 / w2
                s1 = 0
                t1 = 0
                s2 = 0
                t2 = 0
                for m in range(mdepth, 0, -1):
                    s1 = (s1 + alpha[-m - nmin]) * u1
                    t1 = (t1 + beta[-m - nmin]) * u1
                    s2 = (s2 + alpha[-m - nmin]) * u2
                    t2 = (t2 + beta[-m - nmin]) * u2
                f1 = f1 + s1
                g1 = g1 + t1
                f2 = f2 + s2
                g2 = g2 + t2

            val_z[0] = f1.real + f1.imag * iu[0] + g1.real * ju[0] + g1.imag * ku[0]
            val_z[1] = f1.imag * iu[1] + g1.real * ju[1] + g1.imag * ku[1]
            val_z[2] = f1.imag * iu[2] + g1.real * ju[2] + g1.imag * ku[2]
            val_z[3] = f1.imag * iu[3] + g1.real * ju[3] + g1.imag * ku[3]
            val_zbar[0] = f2.real + f2.imag * iu[0] + g2.real * ju[0] + g2.imag * ku[0]
            val_zbar[1] = f2.imag * iu[1] + g2.real * ju[1] + g2.imag * ku[1]
            val_zbar[2] = f2.imag * iu[2] + g2.real * ju[2] + g2.imag * ku[2]
            val_zbar[3] = f2.imag * iu[3] + g2.real * ju[3] + g2.imag * ku[3]

            dot = jq[0] * iu[1] + jq[1] * iu[2] + jq[2] * iu[3]
            a_half[0] = 0.5 * (1.0 + dot)
            a_half[1] = -0.5 * (jq[1] * iu[3] - jq[2] * iu[2])
            a_half[2] = -0.5 * (jq[2] * iu[1] - jq[0] * iu[3])
            a_half[3] = -0.5 * (jq[0] * iu[2] - jq[1] * iu[1])
            b_half[0] = 0.5 * (1.0 - dot)
            b_half[1] = -a_half[1]
            b_half[2] = -a_half[2]
            b_half[3] = -a_half[3]

            _qmul(a_half, val_z, t1v)
            _qmul(b_half, val_zbar, t2v)
            out[i, 0] = t1v[0] + t2v[0]
            out[i, 1] = t1v[1] + t2v[1]
            out[i, 2] = t1v[2] + t2v[2]
            out[i, 3] = t1v[3] + t2v[3]
    return out_arr
