"""Initial heading profile built from the boundary data alone.

Splitting [a, b] into four steps of ``h = (b - a) / 4``, the interior unit
tangents at a + h, a + 2h, a + 3h are estimated from a fourth-difference
smoothness assumption and the Simpson closure of the chord.  The midpoint
tangent is accurate to O(h^4), the quarter points to O(h^3).  The headings are
then unwrapped greedily and joined by a natural cubic spline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BoundaryProblem, PlanarIsometry, canonical_pose
from .errors import DegenerateSeed
from .spline import HeadingProfile, natural_cubic_fit

DEGENERATE_NORM = 1e-8


@dataclass(frozen=True)
class SeedEstimates:
    h: float
    w_tilde: np.ndarray  # rows: w1, w2, w3
    v_tilde: np.ndarray  # rows: v1, v2, v3 (unit)
    theta_tilde: np.ndarray  # theta_0 .. theta_4

    @property
    def tangents(self) -> np.ndarray:
        """All five tangents v_a, v1, v2, v3, v_b."""
        return np.column_stack((np.cos(self.theta_tilde), np.sin(self.theta_tilde)))


def unwrap_headings(v_list, theta0: float = 0.0) -> np.ndarray:
    """Headings of ``v_list`` with each step to the nearest 2*pi representative.

    An exact half-turn resolves counterclockwise (+pi).
    """
    v = np.asarray(v_list, dtype=float)
    out = np.empty(v.shape[0])
    out[0] = theta0
    for j in range(1, v.shape[0]):
        d = math.atan2(v[j, 1], v[j, 0]) - out[j - 1]
        d = (d + math.pi) % (2 * math.pi) - math.pi
        if d == -math.pi:
            d = math.pi
        out[j] = out[j - 1] + d
    return out


def _unit(w, label):
    norm = math.hypot(w[0], w[1])
    if norm <= DEGENERATE_NORM:
        raise DegenerateSeed(f"{label} has norm {norm:.3g}; boundary data nearly cancel")
    return w / norm


def interior_tangent_estimates(p: BoundaryProblem) -> SeedEstimates:
    """Interior tangent estimates for a problem already in canonical pose."""
    h = p.length / 4.0
    chord = p.x_b - p.x_a
    va, vb = p.v_a, p.v_b
    w2 = 3.0 / (8.0 * h) * chord - 0.25 * (va + vb)
    v2 = _unit(w2, "w2")
    w13 = 3.0 / (8.0 * h) * chord - 0.125 * (va + vb) - 0.25 * v2
    w1 = w13 - 0.25 * (vb - va)
    w3 = w13 + 0.25 * (vb - va)
    v1 = _unit(w1, "w1")
    v3 = _unit(w3, "w3")
    theta0 = math.atan2(va[1], va[0])
    theta = unwrap_headings([va, v1, v2, v3, vb], theta0)
    return SeedEstimates(h, np.array([w1, w2, w3]), np.array([v1, v2, v3]), theta)


def seed_profile(p: BoundaryProblem) -> tuple[HeadingProfile, PlanarIsometry]:
    """Natural cubic seed theta~ in the canonical frame, plus the frame isometry."""
    canon, iso = canonical_pose(p)
    est = interior_tangent_estimates(canon)
    knots = np.linspace(canon.a, canon.b, 5)
    return natural_cubic_fit(knots, est.theta_tilde), iso
