import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import IntegrationWarning, quad

from clamped_elastica import BoundaryProblem, ClosedFormParams, PlanarIsometry
from clamped_elastica.closed_form import heading_at
from clamped_elastica.errors import DegenerateSeed
from clamped_elastica.seed import interior_tangent_estimates, seed_profile, unwrap_headings
from clamped_elastica.spline import evaluate

from .conftest import EX1, EX2_VB, EX2_XB, half_circle, straight, unit

WAVE = ClosedFormParams("wavelike", 1.0, 0.5, 0.0)


def test_straight_line_estimates():
    e = interior_tangent_estimates(straight(4.0))
    assert e.h == 1.0
    np.testing.assert_allclose(e.w_tilde, [[1, 0], [1, 0], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(e.v_tilde, [[1, 0], [1, 0], [1, 0]], atol=1e-15)
    np.testing.assert_array_equal(e.theta_tilde, 0.0)


def test_half_circle_midpoint():
    e = interior_tangent_estimates(half_circle())
    np.testing.assert_allclose(e.w_tilde[1], (0.0, 3 / math.pi), atol=1e-14)
    np.testing.assert_allclose(e.v_tilde[1], (0.0, 1.0), atol=1e-14)


def test_half_circle_knots_by_hand():
    # w1 = (3/pi - 1/4) (0, 1) + (1/2, 0) and w3 mirrored, from the estimate formulas
    e = interior_tangent_estimates(half_circle())
    side = math.atan2(3 / math.pi - 0.25, 0.5)
    np.testing.assert_allclose(e.theta_tilde, [0, side, math.pi / 2, math.pi - side, math.pi], atol=1e-14)


@pytest.mark.xfail(
    strict=True,
    reason="the quarter-point estimates already miss the circle by 0.168 rad at h = pi/4, "
    "so a 0.05 bound on the whole profile cannot hold",
)
def test_half_circle_profile_within_005():
    prof, _ = seed_profile(half_circle())
    t = np.linspace(0, math.pi, 201)
    assert np.max(np.abs(evaluate(prof, t) - t)) < 0.05


def test_half_circle_profile_tracks_circle():
    prof, _ = seed_profile(half_circle())
    t = np.linspace(0, math.pi, 201)
    dev = np.abs(evaluate(prof, t) - t)
    assert np.max(dev) <= abs(math.atan2(3 / math.pi - 0.25, 0.5) - math.pi / 4) + 1e-12


def test_example_data_regression():
    p = BoundaryProblem(0, 10, (0, 0), EX2_XB, (1, 0), unit(EX2_VB))
    e = interior_tangent_estimates(p)
    errs = []
    for j, t in enumerate((2.5, 5.0, 7.5)):
        th = heading_at(EX1, t, 0.0)
        errs.append(np.linalg.norm(e.v_tilde[j] - (math.cos(th), math.sin(th))))
    # h = 2.5 is coarse; these are regression values of this implementation
    np.testing.assert_allclose(errs, [1.1672445830941727, 0.18457482090050517, 1.055427780342081], rtol=1e-6)


def test_example_profile_rough_agreement():
    p = BoundaryProblem(0, 10, (0, 0), EX2_XB, (1, 0), unit(EX2_VB))
    prof, _ = seed_profile(p)
    t = np.linspace(0, 10, 101)
    dev = np.abs(evaluate(prof, t) - heading_at(EX1, t, 0.0))
    assert dev[0] == 0.0 and dev[-1] < 1e-5
    assert np.max(dev) < 2.0


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 0.95), st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi))
def test_estimate_invariants(frac, chord_dir, vb_dir):
    p = BoundaryProblem(0, 2.0, (0, 0), 2 * frac * np.array([math.cos(chord_dir), math.sin(chord_dir)]),
                        (1, 0), (math.cos(vb_dir), math.sin(vb_dir)))
    try:
        e = interior_tangent_estimates(p)
    except DegenerateSeed:
        return
    np.testing.assert_allclose(np.linalg.norm(e.v_tilde, axis=1), 1.0, atol=1e-12)
    tang = e.tangents
    np.testing.assert_allclose(tang[1:4], e.v_tilde, atol=1e-12)
    np.testing.assert_allclose(tang[0], p.v_a, atol=1e-12)
    np.testing.assert_allclose(tang[4], p.v_b, atol=1e-12)
    assert np.all(np.abs(np.diff(e.theta_tilde)) <= math.pi)


def test_unwrap_examples():
    np.testing.assert_array_equal(unwrap_headings([(1, 0)] * 5), 0.0)
    v = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 0)]
    np.testing.assert_allclose(unwrap_headings(v), [0, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi], atol=1e-15)
    assert unwrap_headings([(1, 0), (-1, 0)])[1] == pytest.approx(math.pi)
    assert unwrap_headings([(1, 0), (-1, -0.0)])[1] == pytest.approx(math.pi)


def test_degenerate_seed():
    # chord so short and end tangents so opposed that the midpoint estimate cancels
    p = BoundaryProblem(0, 4.0, (0, 0), (0, 0), (1, 0), (-1, 0))
    with pytest.raises(DegenerateSeed):
        interior_tangent_estimates(p)


def test_straight_profile_zero():
    prof, iso = seed_profile(straight(4.0))
    assert iso.rotation == 0.0
    np.testing.assert_array_equal(prof.knots_theta, 0.0)
    np.testing.assert_array_equal(prof.coeffs, 0.0)


def test_profile_end_values():
    p = BoundaryProblem(0, 10, (0, 0), EX2_XB, (1, 0), unit(EX2_VB))
    prof, _ = seed_profile(p)
    assert prof(0.0) == 0.0
    end = prof(10.0)
    d = end - math.atan2(p.v_b[1], p.v_b[0])
    assert abs(d - 2 * math.pi * round(d / (2 * math.pi))) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-math.pi, math.pi), st.floats(-50, 50), st.floats(-50, 50))
def test_equivariance(rot, tx, ty):
    p = BoundaryProblem(0, 10, (0, 0), EX2_XB, (1, 0), unit(EX2_VB))
    iso = PlanarIsometry(rot, (tx, ty))
    q = BoundaryProblem(0, 10, iso.apply_point(p.x_a), iso.apply_point(p.x_b), iso.apply_vector(p.v_a), iso.apply_vector(p.v_b))
    prof_p, _ = seed_profile(p)
    prof_q, iso_q = seed_profile(q)
    assert iso_q.rotation == pytest.approx(rot, abs=1e-15)
    np.testing.assert_allclose(prof_q.knots_theta, prof_p.knots_theta, atol=1e-9)


def _wave_data(start, h):
    th = lambda s: heading_at(WAVE, s, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        pos = lambda t: np.array([quad(lambda s: math.cos(th(s)), 0, t, epsabs=1e-14, epsrel=1e-13, limit=200)[0],
                                  quad(lambda s: math.sin(th(s)), 0, t, epsabs=1e-14, epsrel=1e-13, limit=200)[0]])
        v = lambda t: np.array([math.cos(th(t)), math.sin(th(t))])
        p = BoundaryProblem(start, start + 4 * h, pos(start), pos(start + 4 * h), v(start), v(start + 4 * h))
    return p, [v(start + k * h) for k in (1, 2, 3)]


def tangent_error_slopes(start=0.0, hs=(0.4, 0.2, 0.1, 0.05)):
    errs = []
    for h in hs:
        p, exact = _wave_data(start, h)
        e = interior_tangent_estimates(p)
        errs.append([np.linalg.norm(e.v_tilde[j] - exact[j]) for j in range(3)])
    return np.polyfit(np.log(hs), np.log(np.array(errs)), 1)[0]


def test_convergence_orders():
    s1, s2, s3 = tangent_error_slopes()
    assert s2 >= 3.5
    assert s1 >= 2.5 and s3 >= 2.5
