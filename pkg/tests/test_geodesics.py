import math

import numpy as np
import pytest

from oracles import expm_mp, so21_matrix, velocity_fd
from so21sr.geodesics import (
    HYPERBOLIC,
    PARABOLIC,
    TRIGONOMETRIC,
    GeodesicParams,
    control,
    geodesic_matrix,
    geodesic_path,
    geodesic_product,
    horizontal_norm2,
    left_translate,
    mn_coefficients,
    parallel_frame,
    project_to_L2,
    shifted_params,
    shifted_tail,
    tail_inverse_product,
)
from so21sr.lie_core import So21Vector, exp_so21, pseudo_product, so2_rotation


def test_mn_values():
    c = mn_coefficients(1.0, 2.0)
    assert (c.m, c.n, c.regime) == (pytest.approx(2.0), pytest.approx(2.0), PARABOLIC)
    c = mn_coefficients(0.0, 2.0)
    assert c.m == pytest.approx(math.sinh(2.0), rel=1e-15)
    assert c.n == pytest.approx(math.cosh(2.0) - 1.0, rel=1e-15)
    assert c.regime == HYPERBOLIC
    c = mn_coefficients(math.sqrt(2.0), math.pi)
    assert c.m == pytest.approx(0.0, abs=1e-15) and c.n == pytest.approx(2.0, rel=1e-15)
    assert c.regime == TRIGONOMETRIC


def test_mn_continuous_across_parabolic():
    for t in (0.5, 3.0, 7.0):
        left = mn_coefficients(1.0 - 1e-9, t)
        right = mn_coefficients(1.0 + 1e-9, t)
        assert left.m == pytest.approx(right.m, rel=1e-7)
        assert left.n == pytest.approx(right.n, rel=1e-7)


def test_identity_at_zero():
    for beta in (0.0, 0.7, -2.0):
        assert np.array_equal(geodesic_matrix(GeodesicParams(1.0, beta), 0.0), np.eye(3))
        assert np.allclose(geodesic_product(GeodesicParams(1.0, beta), 0.0), np.eye(3))


def test_beta_zero_is_a_boost():
    t = 1.3
    g = geodesic_matrix(GeodesicParams(0.0, 0.0), t)
    assert np.allclose(g, expm_mp(so21_matrix(t, 0, 0)), atol=1e-14)
    assert g[2, 2] == 1.0 and g[0, 2] == 0.0 and g[2, 0] == 0.0


def test_full_turn_is_rotation():
    beta = math.sqrt(2.0)
    t = 2 * math.pi
    g = geodesic_product(GeodesicParams(0.0, beta), t)
    assert np.allclose(g, so2_rotation(t * beta), atol=1e-12)


def test_matrix_form_equals_product():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = GeodesicParams(rng.uniform(0, 2 * math.pi), rng.uniform(-3, 3))
        t = rng.uniform(0, 6)
        assert np.max(np.abs(geodesic_matrix(p, t) - geodesic_product(p, t))) <= 1e-11


def test_path_matches_pointwise():
    p = GeodesicParams(0.4, -0.8)
    ts = np.linspace(0, 4, 9)
    path = geodesic_path(p, ts)
    for t, g in zip(ts, path):
        assert np.array_equal(g, geodesic_matrix(p, t))


def test_control():
    c = control(GeodesicParams(0.0, 0.0), 3.0)
    assert c.u == So21Vector(1.0, 0.0, 0.0) and c.v == So21Vector(0.0, 0.0, 0.0)
    c = control(GeodesicParams(0.0, 1.0), math.pi / 2)
    assert np.allclose(c.u.coords(), (0.0, -1.0, 0.0), atol=1e-15)
    for t in (0.0, 1.0, 9.0):
        assert horizontal_norm2(control(GeodesicParams(2.0, -1.4), t).u) == pytest.approx(1.0)


def test_velocity_is_left_translated_control():
    p = GeodesicParams(1.1, 0.6)
    for t in (0.5, 2.0, 4.0):
        vel = velocity_fd(lambda s: geodesic_matrix(p, s), t)
        assert np.max(np.abs(vel - geodesic_matrix(p, t) @ control(p, t).u.matrix())) <= 1e-6


def test_shifted_tail():
    rng = np.random.default_rng(4)
    p = GeodesicParams(0.9, 1.7)
    assert np.allclose(shifted_tail(p, 0.0, 2.0), geodesic_product(p, 2.0), atol=1e-14)
    assert np.allclose(shifted_tail(p, 1.5, 1.5), np.eye(3), atol=1e-14)
    for _ in range(30):
        p = GeodesicParams(rng.uniform(0, 6.3), rng.uniform(-2.5, 2.5))
        t0, t = rng.uniform(0, 3, 2)
        assert np.max(np.abs(shifted_tail(p, t0, t) - tail_inverse_product(p, t0, t))) <= 1e-11


def test_shift_turns_initial_direction_backwards():
    # the tail starts in the direction of the control at t0, phi0 - beta t0
    p = GeodesicParams(0.3, 1.2)
    t0, t = 0.8, 2.1
    ref = tail_inverse_product(p, t0, t)
    assert shifted_params(p, t0).phi0 == pytest.approx(control(p, t0).phi % (2 * math.pi))
    wrong = geodesic_product(GeodesicParams(p.phi0 + p.beta * t0, p.beta), t - t0)
    assert np.max(np.abs(wrong - ref)) > 1e-2


def test_reflection():
    p = GeodesicParams(0.7, 1.3)
    q = p.with_opposite_beta()
    for t in (0.4, 2.0):
        assert np.allclose(geodesic_matrix(p, t), geodesic_product(q, -t), atol=1e-12)


def test_projection():
    assert np.array_equal(project_to_L2(np.eye(3)), [1.0, 0.0, 0.0])
    s = 0.9
    assert np.allclose(project_to_L2(exp_so21(So21Vector(s, 0, 0))), [math.cosh(s), math.sinh(s), 0.0])
    beta, t = 1.4, 2.2
    c = mn_coefficients(beta, t)
    x = project_to_L2(geodesic_matrix(GeodesicParams(0.0, beta), t))
    assert np.allclose(x, [1 + c.n, c.m, -beta * c.n], atol=1e-14)


def test_projection_is_unit_speed():
    p = GeodesicParams(2.2, -0.4)
    for t in (0.3, 3.0):
        v = velocity_fd(lambda s: project_to_L2(geodesic_matrix(p, s)), t)
        assert pseudo_product(v, v) == pytest.approx(1.0, abs=1e-6)


def test_parallel_frame():
    assert np.array_equal(parallel_frame(GeodesicParams(1.0, 1.0), 0.0), [0.0, 1.0, 0.0])
    t = 1.7
    assert np.allclose(parallel_frame(GeodesicParams(0.0, 0.0), t), [math.sinh(t), math.cosh(t), 0], atol=1e-14)
    rng = np.random.default_rng(8)
    for _ in range(20):
        p = GeodesicParams(rng.uniform(0, 6.3), rng.uniform(-3, 3))
        t = rng.uniform(0, 5)
        x = project_to_L2(geodesic_matrix(p, t))
        assert abs(pseudo_product(parallel_frame(p, t), x)) <= 1e-10


def test_left_translate():
    g = exp_so21(So21Vector(0.2, 0.1, -0.3))
    p = GeodesicParams(0.5, 0.5)
    assert np.allclose(left_translate(g, p, 1.0), g @ geodesic_matrix(p, 1.0))
