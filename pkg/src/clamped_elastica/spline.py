"""Natural cubic spline heading profiles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NonAscendingKnots, TooFewKnots


@dataclass(frozen=True)
class HeadingProfile:
    """Piecewise cubic lifting theta(t).

    ``coeffs[i]`` holds ``(c0, c1, c2, c3)`` of
    ``c0 + c1 s + c2 s**2 + c3 s**3`` with ``s = t - knots_t[i]``.
    Evaluation outside the knot range is clamped to the end values.
    """

    knots_t: np.ndarray
    knots_theta: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        for name in ("knots_t", "knots_theta", "coeffs"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def a(self) -> float:
        return float(self.knots_t[0])

    @property
    def b(self) -> float:
        return float(self.knots_t[-1])

    def __call__(self, t, order: int = 0):
        return evaluate(self, t, order)

    def shifted(self, delta: float) -> "HeadingProfile":
        """Same profile plus a constant angle (a rotation of the curve)."""
        coeffs = self.coeffs.copy()
        coeffs[:, 0] += delta
        return HeadingProfile(self.knots_t, self.knots_theta + delta, coeffs)


def natural_cubic_fit(t, y) -> HeadingProfile:
    """Natural cubic interpolant through ``(t[i], y[i])``."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.ndim != 1 or t.shape != y.shape:
        raise ValueError("knot arrays must be 1-D with equal length")
    if t.shape[0] < 3:
        raise TooFewKnots(f"need at least 3 knots, got {t.shape[0]}")
    h = np.diff(t)
    if np.any(h <= 0):
        raise NonAscendingKnots("knot times must be strictly ascending")
    slope = np.diff(y) / h
    k = t.shape[0]
    m2 = np.zeros(k)
    diag = np.ascontiguousarray(2.0 * (h[:-1] + h[1:]))
    off = np.ascontiguousarray(h[1:-1])
    rhs = np.ascontiguousarray(6.0 * np.diff(slope))
    m2[1:-1] = kernels.tridiag_solve(off, diag, off, rhs)
    coeffs = np.column_stack(
        (
            y[:-1],
            slope - h * (2.0 * m2[:-1] + m2[1:]) / 6.0,
            0.5 * m2[:-1],
            (m2[1:] - m2[:-1]) / (6.0 * h),
        )
    )
    return HeadingProfile(t, y, coeffs)


def evaluate(s: HeadingProfile, t, order: int = 0):
    """Value (order 0), slope (1) or second derivative (2) of the spline."""
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    arr = np.asarray(t, dtype=float)
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = kernels.spline_eval(s.knots_t, s.coeffs, flat, order)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)
