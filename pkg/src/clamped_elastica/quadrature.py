"""Composite Simpson weights, the tangent-closure map, and curve reconstruction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import CurveSamples
from .errors import LengthMismatch, OddSubdivision
from .spline import HeadingProfile, evaluate

RECONSTRUCTION_PANELS = 8


@dataclass(frozen=True)
class QuadratureWeights:
    q: np.ndarray
    h: float

    @property
    def n(self) -> int:
        return self.q.shape[0] - 1

    @property
    def total(self) -> float:
        return float(self.q.sum())


def simpson_weights(n: int, h: float) -> QuadratureWeights:
    """Composite Simpson weights ``h (1, 4, 2, 4, ..., 2, 4, 1) / 3`` on n steps."""
    if n < 2:
        raise ValueError(f"need at least 2 subintervals, got {n}")
    if n % 2:
        raise OddSubdivision(f"Simpson's rule needs an even subdivision, got n={n}")
    if not h > 0:
        raise ValueError("step h must be positive")
    w = np.full(n + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    q = w * (h / 3.0)
    q.setflags(write=False)
    return QuadratureWeights(q, float(h))


def closure_and_jacobian(phi, w: QuadratureWeights):
    """``S(phi) = sum_j q_j (cos phi_j, sin phi_j)`` and its 2 x (n+1) Jacobian."""
    phi = np.ascontiguousarray(phi, dtype=float)
    if phi.shape != w.q.shape:
        raise LengthMismatch(f"{phi.shape[0]} headings for {w.q.shape[0]} weights")
    return kernels.closure_and_jacobian(phi, np.ascontiguousarray(w.q))


def tangent_closure(phi, w: QuadratureWeights) -> np.ndarray:
    return closure_and_jacobian(phi, w)[0]


def integrate_tangent(heading, curvature, a, b, x_a, n_out, panels=RECONSTRUCTION_PANELS):
    """Solve x' = (cos theta, sin theta), x(a) = x_a, sampled at ``n_out`` times.

    ``heading`` and ``curvature`` are vectorized callables of t.  Every output
    interval is integrated with ``panels`` Simpson panels.
    """
    if n_out < 2:
        raise ValueError("need at least 2 output samples")
    steps = 2 * panels
    t_fine = np.linspace(a, b, (n_out - 1) * steps + 1)
    th = heading(t_fine)
    hf = (b - a) / ((n_out - 1) * steps)
    w = simpson_weights(steps, hf).q
    dx = np.empty((n_out - 1, 2))
    for k, f in enumerate((np.cos(th), np.sin(th))):
        body = f[:-1].reshape(n_out - 1, steps) @ w[:-1]
        dx[:, k] = body + f[steps::steps] * w[-1]
    pos = np.empty((n_out, 2))
    pos[0] = x_a
    pos[1:] = np.asarray(x_a, dtype=float) + np.cumsum(dx, axis=0)
    t = t_fine[::steps]
    return CurveSamples(t, pos, th[::steps], curvature(t))


def integrate_heading(theta: HeadingProfile, x_a, n_out: int = 201) -> CurveSamples:
    """Reconstruct the curve whose lifting is the spline ``theta``."""
    return integrate_tangent(
        lambda t: evaluate(theta, t, 0),
        lambda t: evaluate(theta, t, 1),
        theta.a,
        theta.b,
        x_a,
        n_out,
    )
