"""Cut times, cut points and the conjugate set of the identity.

A geodesic with ``beta != 0`` stops minimizing at the first time ``t1`` when
either its projection closes into a circle bounding area at most ``pi``
(``|beta| >= 3/sqrt(5)``, closed form), or the digon between the projection
and its chord reaches area ``pi``. The digon area is strictly increasing in
``t1``, so the second case is solved by bisection.

Regimes: ``I`` (``beta = 0``, never cut), ``II`` (``0 < beta^2 < 1``),
``III`` (``beta^2 = 1``), ``IVa`` (``|beta| >= 3/sqrt(5)``), ``IVb``
(``1 < |beta| <= 2/sqrt(3)``) and ``IVc`` (in between).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .geodesics import GeodesicParams, geodesic_matrix
from .lie_core import is_in_so2, normalize_angle

BETA_CONJUGATE = 3.0 / math.sqrt(5.0)
BETA_FULL_TURN = 2.0 / math.sqrt(3.0)

ZERO_TOL = 1e-12
HOROCYCLE_TOL = 1e-9
T_XTOL = 1e-12
AREA_GATE = 1e-10
SO2_TOL = 1e-10

REGIME_I = "I"
REGIME_II = "II"
REGIME_III = "III"
REGIME_IVA = "IVa"
REGIME_IVB = "IVb"
REGIME_IVC = "IVc"


class NoCutPointError(ValueError):
    """``beta = 0``: the geodesic minimizes for all time."""


class CutTimeError(RuntimeError):
    """The bisection result misses the area gate."""


@dataclass(frozen=True)
class CutTimeResult:
    beta: float
    regime: str
    t1: float
    psi: float | None
    area_residual: float

    @property
    def half_angle(self):
        """``|beta| t1 / 2``, the quantity the case brackets constrain."""
        return 0.5 * abs(self.beta) * self.t1


@dataclass(frozen=True)
class CutLocusSample:
    beta: float
    t1: float
    element: np.ndarray = field(repr=False)
    in_so2: bool
    angle: float | None


@dataclass(frozen=True)
class Violation:
    index: int
    beta_left: float
    beta_right: float
    t1_left: float
    t1_right: float


@dataclass(frozen=True)
class CutTimeProfile:
    results: list
    violations: list

    @property
    def strictly_decreasing(self):
        return not self.violations


def cut_regime(beta):
    ab = abs(beta)
    if ab < ZERO_TOL:
        return REGIME_I
    if abs(ab - 1.0) < HOROCYCLE_TOL:
        return REGIME_III
    if ab < 1.0:
        return REGIME_II
    if ab >= BETA_CONJUGATE:
        return REGIME_IVA
    if ab <= BETA_FULL_TURN:
        return REGIME_IVB
    return REGIME_IVC


def closed_cut_time(beta):
    """``2 pi / sqrt(beta^2 - 1)``: one full turn of the projected circle."""
    return 2.0 * math.pi / math.sqrt(beta * beta - 1.0)


def area_bracket(beta):
    """Interval on which ``digon_area(beta, .) - pi`` changes sign.

    At ``pi/|beta|`` the area is ``pi - 2 psi < pi``. The upper end is
    ``2 pi/|beta|`` while ``psi < pi/2`` (``|beta| <= 1``) and otherwise the
    smaller of ``3 pi/|beta|`` and the closing time.
    """
    ab = abs(beta)
    lo = math.pi / ab
    if ab <= 1.0 + HOROCYCLE_TOL:
        return lo, 2.0 * math.pi / ab
    return lo, min(3.0 * math.pi / ab, closed_cut_time(ab))


def cut_time(beta) -> CutTimeResult:
    """Cut time of the unit-speed geodesic with parameter ``beta``.

    ``cut_time(beta)`` and ``cut_time(-beta)`` agree exactly: only ``|beta|``
    enters.
    """
    beta = float(beta)
    regime = cut_regime(beta)
    ab = abs(beta)
    if regime == REGIME_I:
        return CutTimeResult(beta, regime, math.inf, None, 0.0)
    if regime == REGIME_IVA:
        return CutTimeResult(beta, regime, closed_cut_time(ab), None, 0.0)
    if regime == REGIME_III:
        ab = 1.0
    lo, hi = area_bracket(ab)
    t1 = kernels.bisect_area(ab, lo, hi, math.pi, T_XTOL, 200)
    psi = kernels.digon_psi(ab, t1)
    residual = ab * t1 - 2.0 * psi - math.pi
    if abs(residual) > AREA_GATE:
        raise CutTimeError(f"area residual {residual:.3e} at beta = {beta!r}")
    return CutTimeResult(beta, regime, t1, psi, residual)


def bracket_holds(result: CutTimeResult):
    """Whether ``|beta| t1 / 2`` lies in the window of its regime."""
    h = result.half_angle
    if result.regime in (REGIME_II, REGIME_III):
        return math.pi / 2 < h < math.pi
    if result.regime == REGIME_IVB:
        return math.pi / 2 < h <= math.pi * (1.0 + 1e-12)
    if result.regime == REGIME_IVC:
        k = math.sqrt(result.beta**2 - 1.0)
        in_time = math.pi / k < result.t1 < 2.0 * math.pi / k
        return in_time and math.pi < h < 1.5 * math.pi
    return True


def case_equations(result: CutTimeResult):
    """Residuals of the paired sine/cosine conditions at the cut time.

    Returns ``(sin(|beta| t1/2) - cos(psi), -cos(|beta| t1/2) - sin(psi))``
    with ``psi`` from the closed forms of each regime.
    """
    ab = abs(result.beta)
    t1 = result.t1
    h = 0.5 * t1
    if result.regime == REGIME_III:
        root = math.sqrt(1.0 + h * h)
        cos_psi, sin_psi = 1.0 / root, h / root
    elif result.regime == REGIME_II:
        k = math.sqrt(1.0 - ab * ab)
        ch, sh = math.cosh(h * k), math.sinh(h * k)
        root = math.sqrt(ch * ch - ab * ab)
        cos_psi, sin_psi = k * ch / root, ab * sh / root
    elif result.regime in (REGIME_IVB, REGIME_IVC):
        k = math.sqrt(ab * ab - 1.0)
        cs, sn = math.cos(h * k), math.sin(h * k)
        root = math.sqrt(ab * ab - cs * cs)
        cos_psi, sin_psi = k * cs / root, ab * sn / root
    else:
        raise ValueError(f"no digon equations in regime {result.regime}")
    half = ab * h
    return math.sin(half) - cos_psi, -math.cos(half) - sin_psi


def conjugate_angle(beta):
    """Rotation angle ``2 pi beta / sqrt(beta^2 - 1)`` mod ``2 pi`` of a cut point in SO(2)."""
    return normalize_angle(2.0 * math.pi * beta / math.sqrt(beta * beta - 1.0))


def cut_point(beta, phi0=0.0):
    """End ``gamma(t1(beta))`` of the noncontinuable shortest arc."""
    result = cut_time(beta)
    if result.regime == REGIME_I:
        raise NoCutPointError("beta = 0 geodesics have no cut point")
    return geodesic_matrix(GeodesicParams(phi0, beta), result.t1)


def cut_point_at(g, beta, phi0=0.0):
    """Cut point of the geodesic starting at ``g``: ``C(g) = g C(e)``."""
    return np.asarray(g, dtype=float) @ cut_point(beta, phi0)


def sample_cut_locus(beta_grid, tol=SO2_TOL):
    """Cut points over ``beta_grid`` flagged for membership in SO(2)."""
    samples = []
    for beta in beta_grid:
        result = cut_time(beta)
        if result.regime == REGIME_I:
            raise NoCutPointError("beta grid must exclude 0")
        g = geodesic_matrix(GeodesicParams(0.0, beta), result.t1)
        flag, angle = is_in_so2(g, tol)
        samples.append(CutLocusSample(float(beta), result.t1, g, flag, angle))
    return samples


def cut_time_profile(beta_min, beta_max, steps) -> CutTimeProfile:
    """Cut times on a uniform grid and every adjacent pair that fails to decrease.

    The report is descriptive. The cut time decreases on ``(0, 1]`` and on
    ``[3/sqrt(5), inf)``; on ``(1, 3/sqrt(5))`` the digon condition gives a
    minimum near ``2/sqrt(3)`` followed by a rise back to ``pi sqrt(5)``.
    """
    if not 0.0 < beta_min < beta_max:
        raise ValueError("need 0 < beta_min < beta_max")
    if steps < 2:
        raise ValueError("need at least two grid points")
    betas = np.linspace(beta_min, beta_max, int(steps))
    results = [cut_time(b) for b in betas]
    violations = [
        Violation(i, results[i].beta, results[i + 1].beta, results[i].t1, results[i + 1].t1)
        for i in range(len(results) - 1)
        if not results[i + 1].t1 < results[i].t1
    ]
    return CutTimeProfile(results, violations)
