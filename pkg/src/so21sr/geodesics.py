"""Unit-speed sub-Riemannian geodesics of SO0(2,1) issuing from the identity.

The horizontal plane at the identity is spanned by the orthonormal pair
``a, b``. Every arclength geodesic from ``e`` is

    gamma(t) = exp(t (cos(phi0) a + sin(phi0) b - beta c)) exp(t beta c)

with its horizontal control rotating as ``phi(t) = phi0 - beta t``.
Geodesics from another origin ``g`` are the left translates ``g gamma(t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .lie_core import (
    So21Vector,
    V0,
    W0,
    check_group,
    exp_so21,
    group_inverse,
    normalize_angle,
)

PARABOLIC = "parabolic"
TRIGONOMETRIC = "trigonometric"
HYPERBOLIC = "hyperbolic"

# |beta^2 - 1| below this is treated as the parabolic (horocycle) case
PARABOLIC_TOL = 1e-9


@dataclass(frozen=True)
class GeodesicParams:
    phi0: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "phi0", normalize_angle(float(self.phi0)))
        object.__setattr__(self, "beta", float(self.beta))

    def with_opposite_beta(self):
        """Parameters describing the same curve traversed backwards.

        ``gamma_(phi0, beta)(t) == gamma_(phi0 + pi, -beta)(-t)``; never applied
        implicitly.
        """
        return GeodesicParams(self.phi0 + math.pi, -self.beta)


@dataclass(frozen=True)
class MNCoefficients:
    m: float
    n: float
    regime: str


@dataclass(frozen=True)
class GeodesicControl:
    u: So21Vector
    v: So21Vector
    phi: float = field(default=0.0)


def mn_regime(beta):
    d = beta * beta - 1.0
    if abs(d) < PARABOLIC_TOL:
        return PARABOLIC
    return TRIGONOMETRIC if d > 0.0 else HYPERBOLIC


def mn_coefficients(beta, t):
    """``m`` and ``n`` of the explicit geodesic matrix.

    ``m = t``, ``n = t^2/2`` when ``beta^2 = 1``; ``sin``/``1 - cos`` of
    ``t sqrt(beta^2 - 1)`` when ``beta^2 > 1``; ``sinh``/``cosh - 1`` of
    ``t sqrt(1 - beta^2)`` otherwise. All three are evaluated as one analytic
    function, so nothing jumps at ``beta^2 = 1``.
    """
    m, n = kernels.mn(float(beta), float(t))
    return MNCoefficients(m, n, mn_regime(beta))


def generator(params: GeodesicParams) -> So21Vector:
    """``cos(phi0) a + sin(phi0) b - beta c``."""
    return So21Vector(math.cos(params.phi0), math.sin(params.phi0), -params.beta)


def geodesic_product(params: GeodesicParams, t):
    """Evaluate the geodesic as the product of two one-parameter subgroups."""
    x = generator(params)
    return exp_so21(t * x) @ exp_so21(So21Vector(0.0, 0.0, t * params.beta))


def geodesic_matrix(params: GeodesicParams, t):
    """Evaluate the geodesic from its explicit entrywise form."""
    e = kernels.geodesic_entries(params.phi0, params.beta, float(t))
    return np.reshape(np.array(e), (3, 3))


def geodesic_path(params: GeodesicParams, ts):
    """Stack of geodesic matrices, shape ``(len(ts), 3, 3)``."""
    return kernels.geodesic_batch(params.phi0, params.beta, np.asarray(ts, dtype=float))


def control(params: GeodesicParams, t) -> GeodesicControl:
    """Horizontal control ``u(t)`` and vertical covector part ``v(t) = beta c``."""
    phi = params.phi0 - params.beta * t
    u = So21Vector(math.cos(phi), math.sin(phi), 0.0)
    v = So21Vector(0.0, 0.0, params.beta)
    return GeodesicControl(u, v, phi)


def horizontal_norm2(u: So21Vector):
    """``<u, u> = (u, u)/2`` with ``(,)`` the Frobenius product on gl(3)."""
    um = u.matrix()
    return 0.5 * float(np.sum(um * um))


def shifted_tail(params: GeodesicParams, t0, t):
    """``gamma(t0)^-1 gamma(t)``, the tail re-based at the identity.

    The tail is again a geodesic from ``e`` with the same ``beta`` and initial
    direction ``phi0 - beta t0`` (the control angle at ``t0``).
    """
    return geodesic_product(shifted_params(params, t0), t - t0)


def shifted_params(params: GeodesicParams, t0):
    return GeodesicParams(params.phi0 - params.beta * t0, params.beta)


def project_to_L2(g, tol=None):
    """Point ``g w0`` of the hyperboloid (first column of ``g``)."""
    g = check_group(g) if tol is None else check_group(g, tol)
    return g @ W0


def parallel_frame(params: GeodesicParams, t):
    """The unit vector ``gamma(t) v0`` tangent to the hyperboloid.

    Along the projected curve this field is parallel.
    """
    return geodesic_matrix(params, t) @ V0


def left_translate(g, params: GeodesicParams, t):
    """Geodesic through ``g``: ``g gamma(t)``."""
    return np.asarray(g, dtype=float) @ geodesic_matrix(params, t)


def tail_inverse_product(params: GeodesicParams, t0, t):
    """Direct evaluation of ``gamma(t0)^-1 gamma(t)`` (no closed form)."""
    return group_inverse(geodesic_matrix(params, t0)) @ geodesic_matrix(params, t)
