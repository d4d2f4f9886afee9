"""Sub-Riemannian logarithm: the shortest geodesics from ``e`` to a target.

The search uses the structure of the geodesic family. Conjugating by a
rotation ``exp(phi0 c)`` turns the ``phi0 = 0`` geodesic into the one with
initial direction ``phi0``, so for a fixed ``beta`` the projection of the
target fixes ``n = g11 - 1``, hence ``t``, and its polar angle fixes ``phi0``.
What remains is the rotation ``theta`` in the fiber ``gamma(t)^-1 g``. The
matching geodesics are the zeros of ``theta`` along a one-parameter chain
covering every ``beta``; they are bracketed on a grid, refined with Brent's
method and polished by damped Gauss-Newton on the full matrix residual.
Candidates beyond their cut time are discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .cut_locus import BETA_CONJUGATE, cut_time
from .geodesics import GeodesicParams, geodesic_matrix
from .hyperbolic_plane import hyp_distance
from .lie_core import TOL_GROUP, W0, check_group, is_in_so2

GATE = 1e-8
GRID = 400
SO2_ROUTE_TOL = 1e-7
NEWTON_TOL = 1e-12
CUT_SLACK = 1e-9
SAME_LENGTH = 1e-7


class ShootingError(RuntimeError):
    """No geodesic reached the target within the gate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class PathSolution:
    phi0: float
    beta: float
    t: float
    endpoint_error: float
    multiplicity_hint: int = 1

    @property
    def params(self):
        return GeodesicParams(self.phi0, self.beta)


def endpoint_error(params: GeodesicParams, t, g):
    return float(np.max(np.abs(geodesic_matrix(params, t) - g)))


def chain(lam, s):
    """``(beta, t)`` along the chain of geodesics through a fixed projection.

    ``s = sqrt(n/2)`` with ``n = g11 - 1``. The chain parameter runs over
    ``(-pi, 2 + pi)``: on ``[0, 2]`` it is ``beta + 1`` (``|beta| <= 1``); on
    the two outer pieces it is the half turning angle ``sigma`` of the
    projected circle, ``beta = +-sqrt(1 + sin(sigma)^2 / s^2)``, so the piece
    passes the turning point of ``beta`` continuously.
    """
    lam = np.asarray(lam, dtype=float)
    beta = np.empty_like(lam)
    t = np.empty_like(lam)

    mid = (lam >= 0.0) & (lam <= 2.0)
    b = lam[mid] - 1.0
    kappa = np.sqrt(np.maximum(0.0, 1.0 - b * b))
    z = kappa * s
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(z < 1e-8, 1.0 - z * z / 6.0, np.arcsinh(z) / z)
    beta[mid] = b
    t[mid] = 2.0 * s * ratio

    for mask, sign, sigma in (
        (lam < 0.0, -1.0, -lam[lam < 0.0]),
        (lam > 2.0, 1.0, lam[lam > 2.0] - 2.0),
    ):
        sn = np.sin(sigma)
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(sigma < 1e-8, 1.0 + sigma * sigma / 6.0, sigma / sn)
        beta[mask] = sign * np.sqrt(1.0 + (sn / s) ** 2)
        t[mask] = 2.0 * s * ratio
    return beta, t


def _chain_grid(grid):
    """Chain parameters: ``grid`` points on the middle piece, the rest outside."""
    outer = max(grid // 2, 50)
    # cluster towards sigma -> pi where t blows up and theta winds fast
    u = np.linspace(0.0, 1.0, outer + 2)[1:-1]
    sigma = math.pi * (1.0 - (1.0 - u) ** 2)
    mid = np.linspace(0.0, 2.0, grid)
    lam = np.concatenate([-sigma[::-1], mid, 2.0 + sigma])
    return np.unique(lam)


def _theta(g, lam, s):
    beta, t = chain(np.atleast_1d(lam), s)
    _, theta = kernels.fiber_scan(g, beta, t)
    return theta


def _time_bound(beta):
    """Cheap upper bound on the cut time (never below it)."""
    ab = np.abs(beta)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.sqrt(np.maximum(ab * ab - 1.0, 0.0))
        circle = np.minimum(2.0 * np.pi / k, 3.0 * np.pi / ab)
        bound = np.where(ab > 1.0, circle, 2.0 * np.pi / ab)
    return bound * (1.0 + 1e-9) + 1e-12


def _roots(g, s, grid):
    lam = _chain_grid(grid)
    beta, t = chain(lam, s)
    _, theta = kernels.fiber_scan(g, beta, t)
    unwrapped = np.unwrap(theta)
    bound = _time_bound(beta)
    admissible = t <= bound
    roots = []
    for i in range(lam.shape[0] - 1):
        if not (admissible[i] or admissible[i + 1]):
            continue
        lo_k = math.ceil(min(unwrapped[i], unwrapped[i + 1]) / (2 * math.pi))
        hi_k = math.floor(max(unwrapped[i], unwrapped[i + 1]) / (2 * math.pi))
        for k in range(lo_k, hi_k + 1):
            root = _refine(g, s, lam[i], lam[i + 1], unwrapped[i], unwrapped[i + 1], k)
            if root is not None:
                roots.append(root)
    return roots


def _refine(g, s, a, b, ta, tb, k, depth=0):
    """Locate the crossing of ``2 pi k`` by ``theta`` on ``[a, b]``."""
    target = 2.0 * math.pi * k
    if abs(tb - ta) < 0.5 * math.pi:
        fa = ta - target
        fb = tb - target
        if fa == 0.0:
            return a
        if fb == 0.0:
            return b
        if fa * fb > 0.0:
            return None

        def f(x):
            th = float(_theta(g, x, s)[0])
            return math.remainder(th - target, 2.0 * math.pi)

        try:
            return brentq(f, a, b, xtol=1e-15, maxiter=200)
        except ValueError:
            return None
    if depth > 12:
        return None
    sub = np.linspace(a, b, 17)
    th = np.unwrap(np.concatenate([[ta], _theta(g, sub[1:-1], s), [tb]]))
    # keep the unwrapped branch anchored at ta
    th += ta - th[0]
    for j in range(16):
        lo, hi = sorted((th[j], th[j + 1]))
        if lo <= target <= hi:
            found = _refine(g, s, sub[j], sub[j + 1], th[j], th[j + 1], k, depth + 1)
            if found is not None:
                return found
    return None


def _gauss_newton(g, phi0, beta, t, iterations=8):
    """Damped Gauss-Newton on the nine entries of ``gamma(t) - g``."""
    x = np.array([phi0, beta, t], dtype=float)

    def residual(v):
        return (geodesic_matrix(GeodesicParams(v[0], v[1]), v[2]) - g).ravel()

    r = residual(x)
    err = float(np.max(np.abs(r)))
    for _ in range(iterations):
        if err <= NEWTON_TOL:
            break
        jac = np.empty((9, 3))
        for j in range(3):
            h = 1e-7 * max(1.0, abs(x[j]))
            dx = np.zeros(3)
            dx[j] = h
            jac[:, j] = (residual(x + dx) - residual(x - dx)) / (2.0 * h)
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        damping = 1.0
        improved = False
        while damping > 1e-4:
            trial = x + damping * step
            rt = residual(trial)
            et = float(np.max(np.abs(rt)))
            if et < err:
                x, r, err = trial, rt, et
                improved = True
                break
            damping *= 0.5
        if not improved:
            break
    return x[0], x[1], x[2], err


def _so2_candidates(g, angle):
    """Shortest arcs to a rotation: one full turn of a projected circle.

    The cut point of ``beta`` with ``|beta| >= 3/sqrt(5)`` is the rotation by
    ``2 pi beta / sqrt(beta^2 - 1)``; writing ``A = |beta|/sqrt(beta^2 - 1)``
    this is ``beta^2 = A^2/(A^2 - 1)`` and ``t = 2 pi sqrt(A^2 - 1)``.
    """
    found = []
    for sign, a_ratio in ((1.0, 1.0 + angle / (2 * math.pi)), (-1.0, 2.0 - angle / (2 * math.pi))):
        if not 1.0 < a_ratio <= 1.5 + 1e-12:
            continue
        a2 = a_ratio * a_ratio
        beta = sign * math.sqrt(a2 / (a2 - 1.0))
        if abs(abs(beta) - BETA_CONJUGATE) < 1e-12:
            beta = sign * BETA_CONJUGATE
        t = 2.0 * math.pi * math.sqrt(a2 - 1.0)
        params = GeodesicParams(0.0, beta)
        found.append(PathSolution(0.0, beta, t, endpoint_error(params, t, g)))
    return found


def shooting_candidates(g, grid=GRID):
    """Every geodesic reaching ``g`` (to refinement accuracy) before its cut time."""
    g = np.asarray(g, dtype=float)
    height = max(0.0, g[0, 0] - 1.0)
    s = math.sqrt(0.5 * height)
    if s == 0.0:
        return []
    candidates = []
    for lam in _roots(g, s, grid):
        beta, t = chain(np.array([lam]), s)
        beta, t = float(beta[0]), float(t[0])
        phi0, _ = kernels.fiber_point(g, beta, t)
        phi0, beta, t, err = _gauss_newton(g, phi0, beta, t)
        if t < 0.0:
            continue
        if t > cut_time(beta).t1 + CUT_SLACK:
            continue
        candidates.append(PathSolution(GeodesicParams(phi0, beta).phi0, beta, t, err))
    return candidates


def _dedupe(solutions):
    unique = []
    for sol in sorted(solutions, key=lambda p: (p.t, p.endpoint_error)):
        duplicate = False
        for u in unique:
            dphi = abs(math.remainder(sol.phi0 - u.phi0, 2 * math.pi))
            if abs(sol.beta - u.beta) < 1e-7 and dphi < 1e-7 and abs(sol.t - u.t) < 1e-7:
                duplicate = True
                break
        if not duplicate:
            unique.append(sol)
    return unique


def sr_log(g, gate=GATE, grid=GRID, tol_group=TOL_GROUP):
    """Shortest geodesics from the identity to ``g``.

    Returns the minimizers sorted by ``beta``, each carrying the number of
    distinct minimizers found in ``multiplicity_hint``. Targets in SO(2) are
    reached by a whole circle of ``phi0``; a single representative
    ``phi0 = 0`` is reported per ``beta``. Raises :class:`ShootingError` when
    nothing lands within ``gate``.
    """
    g = check_group(g, tol_group)
    if float(np.max(np.abs(g - np.eye(3)))) <= gate:
        return [PathSolution(0.0, 0.0, 0.0, float(np.max(np.abs(g - np.eye(3)))))]

    candidates = []
    flag, angle = is_in_so2(g, SO2_ROUTE_TOL)
    if flag:
        candidates.extend(_so2_candidates(g, angle))
    else:
        candidates.extend(shooting_candidates(g, grid))

    good = [c for c in candidates if c.endpoint_error <= gate]
    if not good:
        best = min(candidates, key=lambda c: c.endpoint_error, default=None)
        detail = f"best residual {best.endpoint_error:.3e}" if best else "no candidate"
        raise ShootingError(f"no geodesic within gate {gate:.1e}: {detail}", best)
    good = _dedupe(good)
    t_min = min(c.t for c in good)
    minimizers = [c for c in good if c.t <= t_min + SAME_LENGTH * max(1.0, t_min)]
    count = len(minimizers)
    return sorted(
        (PathSolution(c.phi0, c.beta, c.t, c.endpoint_error, count) for c in minimizers),
        key=lambda c: (c.beta, c.phi0),
    )


def sr_distance(g, gate=GATE, grid=GRID, tol_group=TOL_GROUP):
    """Sub-Riemannian distance from the identity to ``g``."""
    return min(sol.t for sol in sr_log(g, gate, grid, tol_group))


def submetry_lower_bound(g):
    """Hyperbolic distance between ``w0`` and ``g w0``; never exceeds the distance."""
    return hyp_distance(W0, np.asarray(g, dtype=float) @ W0)
