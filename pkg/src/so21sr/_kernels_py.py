"""Pure-Python implementation of the numerical kernels.

This module is the reference for ``_ckernels.pyx``; both expose the same
functions with the same signatures and must agree to rounding.
"""

import math

import numpy as np

BACKEND = "python"

# Below this |q| the coefficient functions are summed as power series.
SERIES_Q = 1e-2
_SERIES_TERMS = 8
_SINH_MAX = 710.0


def unified_coefficients(q):
    """Return ``(M(q), N(q))`` with ``exp(x) = E + M x + N x^2`` when ``x^3 = q x``.

    ``M(q) = sum q^k/(2k+1)!`` and ``N(q) = sum q^k/(2k+2)!``; these are
    ``sinh(a)/a`` and ``(cosh(a)-1)/a^2`` for ``q = a^2 > 0`` and the
    trigonometric analogues for ``q < 0``.
    """
    if abs(q) < SERIES_Q:
        m = 0.0
        n = 0.0
        term_m = 1.0
        term_n = 0.5
        for k in range(_SERIES_TERMS):
            m += term_m
            n += term_n
            term_m *= q / ((2 * k + 2) * (2 * k + 3))
            term_n *= q / ((2 * k + 3) * (2 * k + 4))
        return m, n
    if q > 0.0:
        a = math.sqrt(q)
        if a > _SINH_MAX:
            # libm overflows to inf here; math.sinh would raise
            return math.inf, math.inf
        h = math.sinh(0.5 * a) / (0.5 * a)
        return math.sinh(a) / a, 0.5 * h * h
    a = math.sqrt(-q)
    h = math.sin(0.5 * a) / (0.5 * a)
    return math.sin(a) / a, 0.5 * h * h


def even_coefficient(x):
    """``sum x^k/(2k)!``, i.e. ``cosh(sqrt x)`` or ``cos(sqrt(-x))``."""
    if x >= 0.0:
        r = math.sqrt(x)
        return math.cosh(r) if r <= _SINH_MAX else math.inf
    return math.cos(math.sqrt(-x))


def mn(beta, t):
    """Coefficients ``(m, n)`` of the geodesic with curvature parameter ``beta``."""
    q = t * t * (1.0 - beta * beta)
    cm, cn = unified_coefficients(q)
    return t * cm, t * t * cn


def geodesic_entries(phi0, beta, t):
    """Row-major entries of the geodesic matrix at time ``t``."""
    m, n = mn(beta, t)
    bt = beta * t
    s = bt - phi0
    cs, ss = math.cos(s), math.sin(s)
    cp, sp = math.cos(phi0), math.sin(phi0)
    cb, sb = math.cos(bt), math.sin(bt)
    w = 1.0 - beta * beta * n
    bn = beta * n
    bm = beta * m
    return (
        1.0 + n,
        m * cs + bn * ss,
        bn * cs - m * ss,
        m * cp + bn * sp,
        n * cs * cp + bm * sb + w * cb,
        -n * ss * cp + bm * cb - w * sb,
        m * sp - bn * cp,
        n * cs * sp - bm * cb + w * sb,
        -n * ss * sp + bm * sb + w * cb,
    )


def geodesic_batch(phi0, beta, ts):
    """Geodesic matrices at every time in ``ts``; shape ``(len(ts), 3, 3)``."""
    ts = np.asarray(ts, dtype=float)
    out = np.empty((ts.shape[0], 3, 3))
    for i, t in enumerate(ts):
        out[i] = np.reshape(geodesic_entries(phi0, beta, float(t)), (3, 3))
    return out


def digon_psi(beta, t):
    """Digon angle at the chord, in ``[0, pi]`` while the projection is simple."""
    h = 0.5 * t
    x = h * h * (1.0 - beta * beta)
    if x >= SERIES_Q:
        # divided through by cosh: no overflow for long equidistant arcs
        a = math.sqrt(x)
        return math.atan2(abs(beta) * h * math.tanh(a) / a, 1.0)
    cm, _ = unified_coefficients(x)
    return math.atan2(abs(beta) * h * cm, even_coefficient(x))


def digon_area(beta, t):
    return abs(beta) * t - 2.0 * digon_psi(beta, t)


def bisect_area(beta, lo, hi, target, xtol, maxiter):
    """Bisection for ``digon_area(beta, t) == target`` on ``[lo, hi]``.

    The area is increasing in ``t``; the bracket must straddle the target.
    """
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= xtol:
            break
        if digon_area(beta, mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fiber_point(g, beta, t):
    """Rotation left over after matching the projection of ``g``.

    ``t`` must satisfy ``n(beta, t) == g11 - 1``. Returns ``(phi0, theta)``:
    the geodesic with ``(phi0, beta)`` has ``gamma(t) w0 == g w0`` and
    ``gamma(t)^-1 g`` is the rotation by ``theta``.
    """
    m, n = mn(beta, t)
    phi0 = math.atan2(g[2][0], g[1][0]) - math.atan2(-beta * n, m)
    e = geodesic_entries(phi0, beta, t)
    # gamma^-1 = I gamma^T I
    r11 = -e[1] * g[0][1] + e[4] * g[1][1] + e[7] * g[2][1]
    r21 = -e[2] * g[0][1] + e[5] * g[1][1] + e[8] * g[2][1]
    return phi0, math.atan2(r21, r11)


def fiber_scan(g, betas, ts):
    """Vectorised :func:`fiber_point`; returns ``(phis, thetas)``."""
    rows = np.asarray(g, dtype=float).tolist()
    betas = np.asarray(betas, dtype=float)
    ts = np.asarray(ts, dtype=float)
    phis = np.empty(betas.shape[0])
    thetas = np.empty(betas.shape[0])
    for i in range(betas.shape[0]):
        phis[i], thetas[i] = fiber_point(rows, float(betas[i]), float(ts[i]))
    return phis, thetas
