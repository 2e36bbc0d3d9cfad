"""Closed-form reference elastica: wavelike, orbitlike and borderline families.

Curvatures, in the parameter convention of :mod:`clamped_elastica.elliptic`
(``p`` is the parameter, ``k = sqrt(p)`` the modulus)::

    wavelike    kappa0 * cn(kappa0 (t - t0) / (2 k), p)      0 < p < 1
    orbitlike   kappa0 * dn(kappa0 (t - t0) / 2, p)          p >= 0
    borderline  kappa0 * sech(kappa0 (t - t0) / 2)

Each solves ``2 kappa'' = c kappa - kappa**3`` with
``2 c = (kappa0 / w)**2 (3 w**2 - k**2 - 1)``, where ``w = k`` (wavelike) or
``w = 1`` (orbitlike, borderline).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import BoundaryProblem, CurveSamples
from .elliptic import jacobi_am, jacobi_ellipj
from .quadrature import integrate_tangent

FAMILIES = ("wavelike", "orbitlike", "borderline")
_FAMILY_CODE = {"wavelike": 0, "orbitlike": 1, "borderline": 2}

HEADING_TOL = 1e-10
FD_STEP = 1e-4


@dataclass(frozen=True)
class ClosedFormParams:
    family: str
    kappa0: float
    p: float = 1.0
    t0: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not self.kappa0 > 0:
            raise ValueError("kappa0 must be positive")
        if self.family == "borderline":
            object.__setattr__(self, "p", 1.0)
        elif self.family == "wavelike" and not 0.0 < self.p < 1.0:
            raise ValueError("wavelike elastica need 0 < p < 1")
        elif self.family == "orbitlike" and not self.p >= 0.0:
            raise ValueError("orbitlike elastica need p >= 0")
        for name in ("kappa0", "p", "t0"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def modulus(self) -> float:
        return math.sqrt(self.p)

    @property
    def w(self) -> float:
        return self.modulus if self.family == "wavelike" else 1.0

    @property
    def c(self) -> float:
        w = self.w
        return 0.5 * self.kappa0**2 / w**2 * (3 * w**2 - self.p - 1)

    def to_dict(self) -> dict:
        return {"family": self.family, "kappa0": self.kappa0, "p": self.p, "t0": self.t0}


def curvature_at(cp: ClosedFormParams, t):
    s = cp.kappa0 * (np.asarray(t, dtype=float) - cp.t0)
    if cp.family == "wavelike":
        _, cn, _, _ = jacobi_ellipj(s / (2.0 * cp.modulus), cp.p)
        return cp.kappa0 * cn
    if cp.family == "orbitlike":
        _, _, dn, _ = jacobi_ellipj(0.5 * s, cp.p)
        return cp.kappa0 * dn
    return cp.kappa0 / np.cosh(0.5 * s)


def _integrated_curvature(cp, t, a):
    t = np.asarray(t, dtype=float)
    flat = t.reshape(-1)
    pts = np.concatenate(([a], flat))
    order = np.argsort(pts, kind="stable")
    srt = pts[order]
    seg = kernels.adaptive_simpson_curvature(
        _FAMILY_CODE[cp.family],
        cp.kappa0,
        cp.p,
        cp.t0,
        np.ascontiguousarray(srt[:-1]),
        np.ascontiguousarray(srt[1:]),
        HEADING_TOL,
    )
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    vals = np.empty_like(cum)
    vals[order] = cum
    out = vals[1:] - vals[0]
    return float(out[0]) if t.ndim == 0 else out.reshape(t.shape)


def heading_at(cp: ClosedFormParams, t, a: float):
    """Lifting theta(t) of the reference elastica, normalized to theta(a) = 0."""
    if cp.family == "orbitlike":
        k0 = cp.kappa0
        start = jacobi_am(0.5 * k0 * (a - cp.t0), cp.p)
        return 2.0 * (jacobi_am(0.5 * k0 * (np.asarray(t, dtype=float) - cp.t0), cp.p) - start)
    return _integrated_curvature(cp, t, a)


def sample_reference(cp: ClosedFormParams, a: float, b: float, n: int, x_a=(0.0, 0.0)) -> CurveSamples:
    """``n + 1`` samples of the reference elastica starting at ``x_a`` heading along +x."""
    if not b > a:
        raise ValueError("need b > a")
    if n < 1:
        raise ValueError("need n >= 1")
    return integrate_tangent(
        lambda t: heading_at(cp, t, a),
        lambda t: curvature_at(cp, t),
        a,
        b,
        np.asarray(x_a, dtype=float),
        n + 1,
    )


def reference_problem(cp: ClosedFormParams, a: float, b: float, n: int = 400, x_a=(0.0, 0.0)) -> BoundaryProblem:
    """Boundary data read off the reference curve at both ends."""
    c = sample_reference(cp, a, b, n, x_a)
    th = c.heading[-1]
    return BoundaryProblem(a, b, c.position[0], c.position[-1], (1.0, 0.0), (math.cos(th), math.sin(th)))


def elastica_ode_residual(cp: ClosedFormParams, t):
    """``2 kappa'' - c kappa + kappa**3`` with kappa'' from a 5-point stencil."""
    t = np.asarray(t, dtype=float)
    h = FD_STEP
    f = [curvature_at(cp, t + k * h) for k in (-2, -1, 0, 1, 2)]
    kdd = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    k = f[2]
    return 2 * kdd - cp.c * k + k**3
