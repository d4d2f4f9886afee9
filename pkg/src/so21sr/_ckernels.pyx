# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; mirrors ``_kernels_py`` function for function."""

from libc.math cimport atan2, cos, cosh, fabs, sin, sinh, sqrt, tanh

import numpy as np

BACKEND = "cython"

cdef double _SERIES_Q = 1e-2
SERIES_Q = _SERIES_Q
cdef int SERIES_TERMS = 8


cdef inline void _unified(double q, double *cm, double *cn) noexcept nogil:
    cdef double m = 0.0, n = 0.0, tm = 1.0, tn = 0.5, a, h
    cdef int k
    if fabs(q) < _SERIES_Q:
        for k in range(SERIES_TERMS):
            m += tm
            n += tn
            tm *= q / ((2 * k + 2) * (2 * k + 3))
            tn *= q / ((2 * k + 3) * (2 * k + 4))
        cm[0] = m
        cn[0] = n
    elif q > 0.0:
        a = sqrt(q)
        h = sinh(0.5 * a) / (0.5 * a)
        cm[0] = sinh(a) / a
        cn[0] = 0.5 * h * h
    else:
        a = sqrt(-q)
        h = sin(0.5 * a) / (0.5 * a)
        cm[0] = sin(a) / a
        cn[0] = 0.5 * h * h


cdef inline double _even(double x) noexcept nogil:
    if x >= 0.0:
        return cosh(sqrt(x))
    return cos(sqrt(-x))


cdef inline void _mn(double beta, double t, double *m, double *n) noexcept nogil:
    cdef double cm, cn
    _unified(t * t * (1.0 - beta * beta), &cm, &cn)
    m[0] = t * cm
    n[0] = t * t * cn


cdef void _entries(double phi0, double beta, double t, double *e) noexcept nogil:
    cdef double m, n, bt, s, cs, ss, cp, sp, cb, sb, w, bn, bm
    _mn(beta, t, &m, &n)
    bt = beta * t
    s = bt - phi0
    cs = cos(s)
    ss = sin(s)
    cp = cos(phi0)
    sp = sin(phi0)
    cb = cos(bt)
    sb = sin(bt)
    w = 1.0 - beta * beta * n
    bn = beta * n
    bm = beta * m
    e[0] = 1.0 + n
    e[1] = m * cs + bn * ss
    e[2] = bn * cs - m * ss
    e[3] = m * cp + bn * sp
    e[4] = n * cs * cp + bm * sb + w * cb
    e[5] = -n * ss * cp + bm * cb - w * sb
    e[6] = m * sp - bn * cp
    e[7] = n * cs * sp - bm * cb + w * sb
    e[8] = -n * ss * sp + bm * sb + w * cb


cdef inline double _psi(double beta, double t) noexcept nogil:
    cdef double h = 0.5 * t, x, cm, cn, a
    x = h * h * (1.0 - beta * beta)
    if x >= _SERIES_Q:
        # divided through by cosh: no overflow for long equidistant arcs
        a = sqrt(x)
        return atan2(fabs(beta) * h * tanh(a) / a, 1.0)
    _unified(x, &cm, &cn)
    return atan2(fabs(beta) * h * cm, _even(x))


cdef void _fiber(double[:, ::1] g, double beta, double t,
                 double *phi_out, double *theta_out) noexcept nogil:
    cdef double m, n, phi0, r11, r21
    cdef double e[9]
    _mn(beta, t, &m, &n)
    phi0 = atan2(g[2, 0], g[1, 0]) - atan2(-beta * n, m)
    _entries(phi0, beta, t, e)
    r11 = -e[1] * g[0, 1] + e[4] * g[1, 1] + e[7] * g[2, 1]
    r21 = -e[2] * g[0, 1] + e[5] * g[1, 1] + e[8] * g[2, 1]
    phi_out[0] = phi0
    theta_out[0] = atan2(r21, r11)


def unified_coefficients(double q):
    cdef double cm, cn
    _unified(q, &cm, &cn)
    return cm, cn


def even_coefficient(double x):
    return _even(x)


def mn(double beta, double t):
    cdef double m, n
    _mn(beta, t, &m, &n)
    return m, n


def geodesic_entries(double phi0, double beta, double t):
    cdef double e[9]
    _entries(phi0, beta, t, e)
    return (e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7], e[8])


def geodesic_batch(double phi0, double beta, ts):
    cdef double[::1] tv = np.ascontiguousarray(ts, dtype=float)
    cdef Py_ssize_t i, count = tv.shape[0]
    out = np.empty((count, 3, 3))
    cdef double[:, :, ::1] ov = out
    with nogil:
        for i in range(count):
            _entries(phi0, beta, tv[i], &ov[i, 0, 0])
    return out


def digon_psi(double beta, double t):
    return _psi(beta, t)


def digon_area(double beta, double t):
    return fabs(beta) * t - 2.0 * _psi(beta, t)


def bisect_area(double beta, double lo, double hi, double target,
                double xtol, int maxiter):
    cdef double mid
    cdef int i
    cdef double ab = fabs(beta)
    with nogil:
        for i in range(maxiter):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi or hi - lo <= xtol:
                break
            if ab * mid - 2.0 * _psi(beta, mid) < target:
                lo = mid
            else:
                hi = mid
    return 0.5 * (lo + hi)


def fiber_point(g, double beta, double t):
    cdef double[:, ::1] gv = np.ascontiguousarray(g, dtype=float)
    cdef double phi0, theta
    _fiber(gv, beta, t, &phi0, &theta)
    return phi0, theta


def fiber_scan(g, betas, ts):
    cdef double[:, ::1] gv = np.ascontiguousarray(g, dtype=float)
    cdef double[::1] bv = np.ascontiguousarray(betas, dtype=float)
    cdef double[::1] tv = np.ascontiguousarray(ts, dtype=float)
    cdef Py_ssize_t i, count = bv.shape[0]
    phis = np.empty(count)
    thetas = np.empty(count)
    cdef double[::1] pv = phis, hv = thetas
    with nogil:
        for i in range(count):
            _fiber(gv, bv[i], tv[i], &pv[i], &hv[i])
    return phis, thetas
