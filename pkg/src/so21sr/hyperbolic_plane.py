"""The hyperbolic plane as the upper sheet ``-t^2 + x^2 + y^2 = -1, t > 0``.

Points are length-3 float arrays ``(t, x, y)``. The projection of a
sub-Riemannian geodesic with parameter ``beta`` is a curve of constant
geodesic curvature ``beta``; the digon it bounds with the chord between its
endpoints governs where the geodesic stops minimizing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .lie_core import TIME_REVERSAL, pseudo_product

TOL_POINT = 1e-10
ACOSH_SLACK = 1e-12
ACOSH_REJECT = 1e-9

GEODESIC = "geodesic"
EQUIDISTANT = "equidistant"
HOROCYCLE = "horocycle"
CIRCLE = "circle"

HOROCYCLE_TOL = 1e-9


class SelfIntersectionError(ValueError):
    """The projected curve closes up before the requested time."""


@dataclass(frozen=True)
class SemigeodesicCoords:
    u: float
    v: float


@dataclass(frozen=True)
class DigonData:
    beta: float
    t1: float
    r: float
    psi: float
    area: float


def hyperboloid_point(t, x, y, tol=TOL_POINT):
    p = np.array([t, x, y], dtype=float)
    check_hyperboloid(p, tol)
    return p


def lift(x, y):
    """The point of the sheet above ``(x, y)``."""
    return np.array([math.sqrt(1.0 + x * x + y * y), x, y])


def check_hyperboloid(p, tol=TOL_POINT):
    p = np.asarray(p, dtype=float)
    scale = max(1.0, abs(float(p[0])))
    defect = abs(pseudo_product(p, p) + 1.0)
    if defect > tol * scale * scale or p[0] < 1.0 - tol:
        raise ValueError(f"not on the upper hyperboloid sheet (defect {defect:.3e})")
    return p


def hyp_distance(p, q):
    """Hyperbolic distance ``arccosh(-{p, q})``.

    Small distances are evaluated as ``2 asinh(|p - q|/2)``, which is the same
    quantity without the loss of precision of ``arccosh`` near 1.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    arg = -pseudo_product(p, q)
    if arg < 1.0 - ACOSH_REJECT:
        raise ValueError(f"pseudo-product {arg!r} is not a valid cosh")
    if arg < 2.0:
        d = p - q
        chord2 = max(0.0, pseudo_product(d, d))
        return 2.0 * math.asinh(0.5 * math.sqrt(chord2))
    return math.acosh(arg)


def safe_acosh(x):
    if x < 1.0 - ACOSH_SLACK:
        raise ValueError(f"arccosh argument {x!r} below 1")
    return math.acosh(max(1.0, x))


def to_semigeodesic(p) -> SemigeodesicCoords:
    """Coordinates ``(u, v)`` with ``ds^2 = du^2 + cosh(u)^2 dv^2``.

    ``|u|`` is the distance to the geodesic ``x = 0`` and ``v`` the arclength
    along it of the foot of the perpendicular. On the sheet
    ``sgn(x) arccosh(sqrt(t^2 - y^2)) = asinh(x)`` and
    ``sgn(y) arccosh(t/sqrt(t^2 - y^2)) = asinh(y/sqrt(1 + x^2))``; the
    right-hand forms are used since they keep full precision near the axes.
    """
    t, x, y = (float(c) for c in p)
    return SemigeodesicCoords(math.asinh(x), math.asinh(y / math.sqrt(1.0 + x * x)))


def to_semigeodesic_acosh(p) -> SemigeodesicCoords:
    """The same chart written with ``arccosh`` (reference form)."""
    t, x, y = (float(c) for c in p)
    root = math.sqrt(t * t - y * y)
    u = math.copysign(1.0, x) * safe_acosh(root) if x else 0.0
    v = math.copysign(1.0, y) * safe_acosh(t / root) if y else 0.0
    return SemigeodesicCoords(u, v)


def from_semigeodesic(c: SemigeodesicCoords):
    cu = math.cosh(c.u)
    return np.array([cu * math.cosh(c.v), math.sinh(c.u), cu * math.sinh(c.v)])


def _check_angle(r, alpha):
    if r < 0.0:
        raise ValueError("radius must be non-negative")
    if not 0.0 <= alpha <= 2.0 * math.pi:
        raise ValueError("central angle must lie in [0, 2 pi]")


def circle_arc_length(r, alpha):
    """Length ``alpha sinh(r)`` of a circular arc of radius ``r``."""
    _check_angle(r, alpha)
    return alpha * math.sinh(r)


def sector_area(r, alpha):
    """Area ``alpha (cosh(r) - 1)`` of the matching sector."""
    _check_angle(r, alpha)
    return alpha * (math.cosh(r) - 1.0)


def classify_projection(beta):
    b2 = beta * beta
    if b2 == 0.0:
        return GEODESIC
    if abs(abs(beta) - 1.0) < HOROCYCLE_TOL:
        return HOROCYCLE
    return EQUIDISTANT if b2 < 1.0 else CIRCLE


def closing_time(beta):
    """First return time ``2 pi / sqrt(beta^2 - 1)`` of a circle; ``inf`` otherwise."""
    b2 = beta * beta
    if b2 <= 1.0:
        return math.inf
    return 2.0 * math.pi / math.sqrt(b2 - 1.0)


def _check_digon(beta, t1):
    if beta == 0.0:
        raise ValueError("beta = 0 projects to a geodesic: no digon")
    if t1 <= 0.0:
        raise ValueError("t1 must be positive")
    if t1 >= closing_time(beta):
        raise SelfIntersectionError(
            f"projection closes at t = {closing_time(beta)!r} <= t1 = {t1!r}"
        )


def digon_data(beta, t1) -> DigonData:
    """Geometry of the digon cut off by the chord ``[x(0), x(t1)]``.

    The area follows from Gauss-Bonnet with curvature -1, ``|beta| t1 - 2 psi``.
    ``cos(psi) = m/sqrt(n(n+2))``; ``psi`` is evaluated through the equivalent
    half-time form ``atan2(|beta| S(t1/2), C(t1/2))`` which stays accurate at
    both ends of ``(0, pi)``.
    """
    _check_digon(beta, t1)
    _, n = kernels.mn(beta, t1)
    psi = kernels.digon_psi(beta, t1)
    r = 2.0 * math.asinh(math.sqrt(0.5 * n))  # arccosh(1 + n)
    return DigonData(beta, t1, r, psi, abs(beta) * t1 - 2.0 * psi)


def digon_cos_psi(beta, t1):
    """``m / sqrt(n (n + 2))`` as stated for the chord angle."""
    m, n = kernels.mn(beta, t1)
    return m / math.sqrt(n * (n + 2.0))


def digon_rates(beta, t1):
    """``(dS/dt1, dpsi/dt1) = (|beta| n/(n+2), |beta|/(n+2))``."""
    _check_digon(beta, t1)
    _, n = kernels.mn(beta, t1)
    ab = abs(beta)
    return ab * n / (n + 2.0), ab / (n + 2.0)


def circle_radius(beta):
    """Radius ``arccoth|beta|`` of the projected circle (``|beta| > 1``)."""
    if beta * beta <= 1.0:
        raise ValueError("only |beta| > 1 projects to a circle")
    return math.atanh(1.0 / abs(beta))


def circle_center(beta):
    """Center of the projected circle of the ``phi0 = 0`` geodesic."""
    rho = circle_radius(beta)
    return np.array([math.cosh(rho), 0.0, -math.copysign(math.sinh(rho), beta)])


def minkowski_cross(u, v):
    """``I (u x v)``: pseudo-orthogonal to both ``u`` and ``v``."""
    return TIME_REVERSAL @ np.cross(u, v)


def numeric_geodesic_curvature(curve, index):
    """Signed geodesic curvature at ``curve[index]`` from three samples.

    Samples must be equally spaced in arclength. The second difference is
    projected onto the tangent plane and read off against the unit normal
    obtained by turning the tangent clockwise, so a curve bending towards
    ``-y`` while heading along ``+x`` has positive curvature.
    """
    curve = np.asarray(curve, dtype=float)
    if curve.shape[0] < 3:
        raise ValueError("need at least three samples")
    if not 0 < index < curve.shape[0] - 1:
        raise IndexError("curvature needs an interior sample")
    p0, p1, p2 = curve[index - 1], curve[index], curve[index + 1]
    h = 0.5 * (hyp_distance(p0, p1) + hyp_distance(p1, p2))
    tangent = (p2 - p0) / (2.0 * h)
    tangent = tangent + pseudo_product(tangent, p1) * p1
    tangent = tangent / math.sqrt(pseudo_product(tangent, tangent))
    accel = (p0 - 2.0 * p1 + p2) / (h * h)
    accel = accel + pseudo_product(accel, p1) * p1
    normal = -minkowski_cross(p1, tangent)
    return pseudo_product(accel, normal)
