"""Minkowski form, the algebras so(2,1) and sl(2), closed-form exponentials.

Group elements act on column vectors ``(t, x, y)`` of Minkowski space and are
plain ``(3, 3)`` float arrays. Algebra elements are stored by their
coordinates in the bases

    a = e12 + e21,  b = e13 + e31,  c = e32 - e23          (so(2,1))
    a' = (e12 + e21)/2,  b' = (e11 - e22)/2,  c' = (e12 - e21)/2   (sl(2))

so the defining linear constraints hold exactly by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

TOL_GROUP = 1e-10

TIME_REVERSAL = np.diag([-1.0, 1.0, 1.0])
W0 = np.array([1.0, 0.0, 0.0])
V0 = np.array([0.0, 1.0, 0.0])


class GroupMembershipError(ValueError):
    """A matrix failed one of the SO0(2,1) membership invariants."""

    def __init__(self, invariant, defect):
        self.invariant = invariant
        self.defect = defect
        super().__init__(f"{invariant} invariant violated (defect {defect:.3e})")


@dataclass(frozen=True)
class So21Vector:
    ca: float = 0.0
    cb: float = 0.0
    cc: float = 0.0

    def matrix(self):
        return np.array(
            [
                [0.0, self.ca, self.cb],
                [self.ca, 0.0, -self.cc],
                [self.cb, self.cc, 0.0],
            ]
        )

    @classmethod
    def from_matrix(cls, x):
        x = np.asarray(x, dtype=float)
        return cls(float(x[1, 0]), float(x[2, 0]), float(x[2, 1]))

    def coords(self):
        return (self.ca, self.cb, self.cc)

    def __add__(self, other):
        return So21Vector(self.ca + other.ca, self.cb + other.cb, self.cc + other.cc)

    def __sub__(self, other):
        return So21Vector(self.ca - other.ca, self.cb - other.cb, self.cc - other.cc)

    def __neg__(self):
        return So21Vector(-self.ca, -self.cb, -self.cc)

    def __mul__(self, s):
        return So21Vector(s * self.ca, s * self.cb, s * self.cc)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Sl2Vector:
    pa: float = 0.0
    pb: float = 0.0
    pc: float = 0.0

    def matrix(self):
        return 0.5 * np.array(
            [
                [self.pb, self.pa + self.pc],
                [self.pa - self.pc, -self.pb],
            ]
        )

    def coords(self):
        return (self.pa, self.pb, self.pc)

    def __add__(self, other):
        return Sl2Vector(self.pa + other.pa, self.pb + other.pb, self.pc + other.pc)

    def __mul__(self, s):
        return Sl2Vector(s * self.pa, s * self.pb, s * self.pc)

    __rmul__ = __mul__


A = So21Vector(1.0, 0.0, 0.0)
B = So21Vector(0.0, 1.0, 0.0)
C = So21Vector(0.0, 0.0, 1.0)
A_PRIME = Sl2Vector(1.0, 0.0, 0.0)
B_PRIME = Sl2Vector(0.0, 1.0, 0.0)
C_PRIME = Sl2Vector(0.0, 0.0, 1.0)


def pseudo_product(u, v):
    """Minkowski form ``-u_t v_t + u_x v_x + u_y v_y``."""
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _bracket_coords(u, v):
    # structure constants [a,b] = -c, [b,c] = a, [c,a] = b
    ua, ub, uc = u
    va, vb, vc = v
    return (ub * vc - uc * vb, uc * va - ua * vc, -(ua * vb - ub * va))


def bracket(u: So21Vector, v: So21Vector) -> So21Vector:
    return So21Vector(*_bracket_coords(u.coords(), v.coords()))


def bracket_sl2(u: Sl2Vector, v: Sl2Vector) -> Sl2Vector:
    """Commutator in sl(2); same structure constants as so(2,1)."""
    return Sl2Vector(*_bracket_coords(u.coords(), v.coords()))


def char_invariant(x: So21Vector):
    """``q = x21^2 + x31^2 - x32^2`` and ``alpha = sqrt|q|``; ``x^3 = q x``."""
    q = x.ca * x.ca + x.cb * x.cb - x.cc * x.cc
    return q, math.sqrt(abs(q))


def exp_so21(x: So21Vector):
    """Closed-form exponential ``E + M(q) x + N(q) x^2``.

    The sin/sinh coefficient functions are one analytic function of ``q``;
    near ``q = 0`` they are summed as series to avoid cancellation.
    """
    q, _ = char_invariant(x)
    cm, cn = kernels.unified_coefficients(q)
    xm = x.matrix()
    return np.eye(3) + cm * xm + cn * (xm @ xm)


def exp_sl2(w: Sl2Vector):
    """Exponential of a trace-free 2x2 matrix via ``w^2 = -det(w) E``."""
    wm = w.matrix()
    delta = wm[0, 0] * wm[1, 1] - wm[0, 1] * wm[1, 0]
    # exp(w) = C(-delta) E + M(-delta) w with the same series as so(2,1)
    cm, _ = kernels.unified_coefficients(-delta)
    return kernels.even_coefficient(-delta) * np.eye(2) + cm * wm


def algebra_iso(w: Sl2Vector) -> So21Vector:
    """The Lie algebra isomorphism sl(2) -> so(2,1), ``a' -> a`` etc."""
    return So21Vector(w.pa, w.pb, w.pc)


def covering_on_exponentials(w: Sl2Vector):
    """The pair ``(exp(w), exp(l(w)))`` defining the double cover on exponentials.

    The cover ``L: SL(2) -> SO0(2,1)`` is fixed by ``L(exp w) = exp(l(w))``;
    its kernel is ``{E2, -E2}``.
    """
    return exp_sl2(w), exp_so21(algebra_iso(w))


def so2_rotation(phi):
    """``exp(phi c)``: rotation of the space plane fixing ``w0``."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def group_defects(g):
    """Return the three membership defects of ``g``.

    ``(pseudo-orthogonality, |det - 1|, time-direction deficit)`` where the
    first is ``max|g I g^T I - E|`` and the last is ``max(0, 1 - g11)``.
    """
    g = np.asarray(g, dtype=float)
    ortho = float(np.max(np.abs(g @ TIME_REVERSAL @ g.T @ TIME_REVERSAL - np.eye(3))))
    det = abs(float(np.linalg.det(g)) - 1.0)
    time = max(0.0, 1.0 - float(g[0, 0]))
    return ortho, det, time


def check_group(g, tol=TOL_GROUP):
    """Raise :class:`GroupMembershipError` unless ``g`` lies in SO0(2,1).

    The quadratic and cubic defects are compared against ``tol`` times
    ``max|g|^2`` and ``max|g|^3`` (at least 1): a float64 matrix with entries
    near 1e3 cannot be pseudo-orthogonal to better than about 1e-10.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (3, 3) or not np.all(np.isfinite(g)):
        raise GroupMembershipError("shape", math.inf)
    ortho, det, time = group_defects(g)
    scale = max(1.0, float(np.max(np.abs(g))))
    if ortho > tol * scale**2:
        raise GroupMembershipError("pseudo-orthogonality", ortho)
    if det > tol * scale**3:
        raise GroupMembershipError("orientation", det)
    if time > tol:
        raise GroupMembershipError("time-direction", time)
    return g


def is_group_element(g, tol=TOL_GROUP):
    try:
        check_group(g, tol)
    except GroupMembershipError:
        return False
    return True


def group_inverse(g):
    """``g^-1 = I g^T I`` for pseudo-orthogonal ``g``."""
    g = np.asarray(g, dtype=float)
    return TIME_REVERSAL @ g.T @ TIME_REVERSAL


def is_in_so2(g, tol=TOL_GROUP):
    """Whether ``g`` fixes ``w0``; returns ``(flag, angle)``.

    ``angle`` is ``atan2(g32, g22)`` in ``[0, 2 pi)`` and ``None`` when the
    flag is false.
    """
    g = np.asarray(g, dtype=float)
    edge = np.concatenate([g[0, 1:], g[1:, 0]])
    if abs(g[0, 0] - 1.0) > tol or np.max(np.abs(edge)) > tol:
        return False, None
    return True, normalize_angle(math.atan2(g[2, 1], g[1, 1]))


def normalize_angle(phi):
    """Reduce ``phi`` to ``[0, 2 pi)``."""
    phi = math.fmod(phi, 2.0 * math.pi)
    if phi < 0.0:
        phi += 2.0 * math.pi
    if phi >= 2.0 * math.pi:
        phi = 0.0
    return phi
