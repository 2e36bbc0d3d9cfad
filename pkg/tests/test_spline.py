import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import trapezoid

from clamped_elastica import kernels
from clamped_elastica.errors import NonAscendingKnots, TooFewKnots
from clamped_elastica.spline import evaluate, natural_cubic_fit


def knots_strategy():
    return st.lists(st.floats(0.05, 2.0), min_size=2, max_size=12).flatmap(
        lambda gaps: st.tuples(
            st.just(np.concatenate(([0.0], np.cumsum(gaps)))),
            st.lists(st.floats(-5, 5), min_size=len(gaps) + 1, max_size=len(gaps) + 1),
        )
    )


@settings(max_examples=100, deadline=None)
@given(knots_strategy())
def test_interpolation_continuity_natural(data):
    t, y = data
    y = np.array(y)
    s = natural_cubic_fit(t, y)
    scale = max(1.0, np.max(np.abs(y)))
    np.testing.assert_allclose(evaluate(s, t), y, atol=1e-12 * scale)
    # C2 at interior knots: compare left and right polynomial pieces
    h = np.diff(t)
    c = s.coeffs
    left = [c[:-1, 0] + c[:-1, 1] * h[:-1] + c[:-1, 2] * h[:-1] ** 2 + c[:-1, 3] * h[:-1] ** 3,
            c[:-1, 1] + 2 * c[:-1, 2] * h[:-1] + 3 * c[:-1, 3] * h[:-1] ** 2,
            2 * c[:-1, 2] + 6 * c[:-1, 3] * h[:-1]]
    right = [c[1:, 0], c[1:, 1], 2 * c[1:, 2]]
    for lft, rgt in zip(left, right):
        np.testing.assert_allclose(lft, rgt, atol=1e-10 * scale / min(1.0, h.min()) ** 2)
    assert abs(evaluate(s, t[0], 2)) <= 1e-10 * scale / min(1.0, h.min()) ** 2
    assert abs(evaluate(s, t[-1], 2)) <= 1e-10 * scale / min(1.0, h.min()) ** 2


def test_constant():
    s = natural_cubic_fit(np.linspace(0, 1, 6), np.full(6, 0.7))
    x = np.linspace(0, 1, 33)
    np.testing.assert_allclose(evaluate(s, x), 0.7, atol=1e-15)
    np.testing.assert_allclose(evaluate(s, x, 1), 0.0, atol=1e-14)
    np.testing.assert_allclose(evaluate(s, x, 2), 0.0, atol=1e-14)


def test_linear_ramp():
    t = np.array([0.0, 0.3, 1.0, 1.4, 2.0])
    s = natural_cubic_fit(t, 2 * t - 1)
    x = np.linspace(0, 2, 41)
    np.testing.assert_allclose(evaluate(s, x), 2 * x - 1, atol=1e-14)
    np.testing.assert_allclose(evaluate(s, x, 1), 2.0, atol=1e-13)


def test_sine_midpoints():
    t = np.linspace(0, math.pi, 5)
    s = natural_cubic_fit(t, np.sin(t))
    mid = 0.5 * (t[1:] + t[:-1])
    assert np.max(np.abs(evaluate(s, mid) - np.sin(mid))) < 0.01


def test_knot_values_exact_and_natural_ends():
    t = np.linspace(0, 4, 9)
    y = np.cos(t) + t**2
    s = natural_cubic_fit(t, y)
    np.testing.assert_array_equal(evaluate(s, t[:-1]), y[:-1])
    assert abs(evaluate(s, t[0], 2)) < 1e-10 and abs(evaluate(s, t[-1], 2)) < 1e-10


def test_derivative_consistency():
    t = np.linspace(0, 3, 7)
    s = natural_cubic_fit(t, np.sin(2 * t))
    x = np.linspace(0.1, 2.9, 23)
    d = 1e-6
    fd = (evaluate(s, x + d) - evaluate(s, x - d)) / (2 * d)
    d1 = evaluate(s, x, 1)
    assert np.all(np.abs(fd - d1) <= 1e-6 * np.maximum(1.0, np.abs(d1)))
    fd2 = (evaluate(s, x + d, 1) - evaluate(s, x - d, 1)) / (2 * d)
    assert np.all(np.abs(fd2 - evaluate(s, x, 2)) <= 1e-6 * np.maximum(1.0, np.abs(fd2)))


def test_clamped_outside_range():
    t = np.linspace(0, 1, 4)
    s = natural_cubic_fit(t, t**2)
    assert evaluate(s, -5.0) == evaluate(s, 0.0)
    assert evaluate(s, 7.0) == evaluate(s, 1.0)


def test_natural_minimizes_bending():
    """Adding a C2 bump that vanishes at the knots never lowers the integral of the squared second derivative."""
    rng = np.random.default_rng(11)
    t = np.linspace(0, 2, 6)
    s = natural_cubic_fit(t, rng.normal(size=6))
    x = np.linspace(0, 2, 4001)
    base = trapezoid(evaluate(s, x, 2) ** 2, x)
    for _ in range(100):
        amp = rng.normal(size=3)
        # sin(k pi x / h) vanishes at every knot and is smooth
        freqs = rng.integers(1, 4, size=3)
        dd = sum(-a * (f * math.pi / 0.4) ** 2 * np.sin(f * math.pi * x / 0.4) for a, f in zip(amp, freqs))
        assert trapezoid((evaluate(s, x, 2) + 1e-2 * dd) ** 2, x) >= base - 1e-9


def test_deterministic():
    rng = np.random.default_rng(5)
    t = np.sort(rng.uniform(0, 10, 12))
    y = rng.normal(size=12)
    x = rng.uniform(t[0], t[-1], 1000)
    a = evaluate(natural_cubic_fit(t, y), x)
    b = evaluate(natural_cubic_fit(t, y), x)
    assert a.tobytes() == b.tobytes()


def test_shifted():
    t = np.linspace(0, 1, 5)
    s = natural_cubic_fit(t, t**3)
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(evaluate(s.shifted(2.0), x), evaluate(s, x) + 2.0, atol=1e-15)


def test_errors():
    with pytest.raises(TooFewKnots):
        natural_cubic_fit([0, 1], [0, 1])
    with pytest.raises(NonAscendingKnots):
        natural_cubic_fit([0, 1, 1], [0, 1, 2])
    s = natural_cubic_fit([0, 1, 2], [0, 1, 0])
    with pytest.raises(ValueError):
        evaluate(s, 0.5, 3)


@pytest.mark.skipif(not kernels.numba_available(), reason="numba not installed")
def test_backends_agree():
    rng = np.random.default_rng(2)
    t = np.cumsum(rng.uniform(0.1, 1, 30))
    y = rng.normal(size=30)
    x = rng.uniform(t[0] - 1, t[-1] + 1, 500)
    out = {}
    for name in ("numpy", "numba"):
        with kernels.use_backend(name):
            s = natural_cubic_fit(t, y)
            out[name] = [evaluate(s, x, k) for k in (0, 1, 2)]
    for a, b in zip(out["numpy"], out["numba"]):
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)
