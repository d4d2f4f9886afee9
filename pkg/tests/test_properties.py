import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import covering_by_adjoint
from so21sr.cut_locus import cut_time
from so21sr.geodesics import GeodesicParams, geodesic_matrix, geodesic_product, shifted_tail, tail_inverse_product
from so21sr.hyperbolic_plane import from_semigeodesic, hyp_distance, lift, to_semigeodesic
from so21sr.lie_core import (
    Sl2Vector,
    So21Vector,
    bracket,
    check_group,
    exp_sl2,
    exp_so21,
    group_inverse,
)

coord = st.floats(-3.0, 3.0, allow_nan=False)
small = st.floats(-1.5, 1.5, allow_nan=False)
angle = st.floats(0.0, 2 * math.pi, allow_nan=False, exclude_max=True)
beta = st.floats(-3.0, 3.0, allow_nan=False)
time = st.floats(0.0, 5.0, allow_nan=False)


@given(coord, coord, coord, coord, coord, coord)
def test_bracket_antisymmetric(a1, b1, c1, a2, b2, c2):
    u, v = So21Vector(a1, b1, c1), So21Vector(a2, b2, c2)
    lhs = np.array(bracket(u, v).coords())
    rhs = np.array(bracket(v, u).coords())
    assert np.allclose(lhs, -rhs, atol=1e-12)


@given(st.lists(coord, min_size=9, max_size=9))
def test_jacobi(c):
    u, v, w = So21Vector(*c[:3]), So21Vector(*c[3:6]), So21Vector(*c[6:])
    total = np.zeros(3)
    for x, y, z in ((u, v, w), (v, w, u), (w, u, v)):
        total += np.array(bracket(x, bracket(y, z)).coords())
    assert np.max(np.abs(total)) <= 1e-10


@given(small, small, small)
def test_exp_lands_in_group_and_inverts(ca, cb, cc):
    g = exp_so21(So21Vector(ca, cb, cc))
    check_group(g)
    assert np.allclose(g @ exp_so21(So21Vector(-ca, -cb, -cc)), np.eye(3), atol=1e-11)
    assert np.allclose(group_inverse(g) @ g, np.eye(3), atol=1e-11)


@given(small, small, small)
def test_covering_homomorphism(pa, pb, pc):
    w = Sl2Vector(pa, pb, pc)
    assert np.allclose(covering_by_adjoint(exp_sl2(w)), exp_so21(So21Vector(pa, pb, pc)), atol=1e-11)


@given(angle, beta, time)
def test_geodesic_in_group(phi0, b, t):
    check_group(geodesic_matrix(GeodesicParams(phi0, b), t))


@given(angle, beta, time)
def test_matrix_form_is_product(phi0, b, t):
    p = GeodesicParams(phi0, b)
    g = geodesic_matrix(p, t)
    scale = max(1.0, float(np.max(np.abs(g))))
    assert np.max(np.abs(g - geodesic_product(p, t))) <= 1e-12 * scale * scale


@given(angle, beta, time, time)
def test_left_invariance_of_family(phi0, b, t0, t):
    p = GeodesicParams(phi0, b)
    ref = tail_inverse_product(p, t0, t)
    scale = max(1.0, float(np.max(np.abs(geodesic_matrix(p, max(t0, t))))))
    assert np.max(np.abs(shifted_tail(p, t0, t) - ref)) <= 1e-12 * scale**2


@given(st.floats(-50.0, 50.0))
def test_cut_time_even(b):
    assert cut_time(b).t1 == cut_time(-b).t1


@given(st.floats(-4, 4), st.floats(-4, 4), st.floats(-4, 4), st.floats(-4, 4), st.floats(-4, 4), st.floats(-4, 4))
def test_hyperbolic_triangle_inequality(x1, y1, x2, y2, x3, y3):
    p, q, r = lift(x1, y1), lift(x2, y2), lift(x3, y3)
    assert hyp_distance(p, r) <= hyp_distance(p, q) + hyp_distance(q, r) + 1e-9


@settings(max_examples=200)
@given(st.floats(-6, 6), st.floats(-6, 6))
def test_chart_round_trip(x, y):
    p = lift(x, y)
    assert np.max(np.abs(from_semigeodesic(to_semigeodesic(p)) - p)) <= 1e-10 * p[0]
