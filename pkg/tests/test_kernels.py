import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest

from so21sr import kernels
from so21sr import _kernels_py


def test_python_backend_always_available():
    assert kernels.available_backends()["python"] is _kernels_py


def test_env_forces_pure_python():
    env = dict(os.environ, SO21SR_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from so21sr import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("q", [0.0, 1e-12, -1e-12, 9.9e-3, -9.9e-3, 1e-2, -1e-2, 2.5, -2.5, 40.0])
def test_unified_coefficients_against_high_precision(backend, q):
    with mpmath.workdps(40):
        if q == 0:
            ref_m, ref_n = mpmath.mpf(1), mpmath.mpf(0.5)
        else:
            a = mpmath.sqrt(mpmath.mpf(q))  # imaginary for q < 0
            ref_m = mpmath.re(mpmath.sinh(a) / a)
            ref_n = mpmath.re((mpmath.cosh(a) - 1) / a**2)
        m, n = backend.unified_coefficients(q)
        assert m == pytest.approx(float(ref_m), rel=2e-15)
        assert n == pytest.approx(float(ref_n), rel=2e-15)


def test_series_switch_is_seamless(backend):
    # both sides of |q| = 1e-2 agree to rounding
    eps = 1e-15
    for q in (backend.SERIES_Q, -backend.SERIES_Q):
        below = backend.unified_coefficients(q * (1 - eps))
        above = backend.unified_coefficients(q * (1 + eps))
        assert below == pytest.approx(above, rel=1e-14)


def test_backends_agree():
    backends = kernels.available_backends()
    if len(backends) < 2:
        pytest.skip("compiled kernels not built")
    py, cy = backends["python"], backends["cython"]
    rng = np.random.default_rng(7)
    for _ in range(200):
        phi0, beta, t = rng.uniform(0, 6.3), rng.uniform(-3, 3), rng.uniform(0, 8)
        assert np.allclose(py.geodesic_entries(phi0, beta, t), cy.geodesic_entries(phi0, beta, t),
                           rtol=1e-14, atol=1e-14)
        assert py.digon_psi(beta, t) == pytest.approx(cy.digon_psi(beta, t), abs=1e-14)
    ts = np.linspace(0, 5, 50)
    assert np.allclose(py.geodesic_batch(0.2, 0.7, ts), cy.geodesic_batch(0.2, 0.7, ts), atol=1e-13)
    lo, hi = math.pi / 0.5, 2 * math.pi / 0.5
    assert py.bisect_area(0.5, lo, hi, math.pi, 1e-12, 200) == pytest.approx(
        cy.bisect_area(0.5, lo, hi, math.pi, 1e-12, 200), abs=1e-12)
    g = np.reshape(py.geodesic_entries(1.0, 0.4, 2.0), (3, 3))
    betas = np.linspace(-0.9, 0.9, 11)
    ts = np.full(11, 2.0)
    p1, t1 = py.fiber_scan(g, betas, ts)
    p2, t2 = cy.fiber_scan(g, betas, ts)
    assert np.allclose(p1, p2, atol=1e-13) and np.allclose(t1, t2, atol=1e-12)


def test_fiber_point_vanishes_on_the_geodesic(backend):
    g = np.reshape(backend.geodesic_entries(2.0, -1.3, 3.0), (3, 3))
    phi0, theta = backend.fiber_point(g, -1.3, 3.0)
    assert math.remainder(phi0 - 2.0, 2 * math.pi) == pytest.approx(0.0, abs=1e-12)
    assert theta == pytest.approx(0.0, abs=1e-12)
