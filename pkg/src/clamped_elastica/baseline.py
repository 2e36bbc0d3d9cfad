"""Standard discretisation baseline: a fixed-segment polyline with minimal turning.

Vertices P_0 .. P_n with all segments of length ``h = L / n``.  The clamped
conditions pin P_0, P_1 = x_a + h v_a, P_{n-1} = x_b - h v_b and P_n, and the
remaining segment lengths are equality constraints.  The objective is the sum of
squared exterior angles.  The start is the straight chord from x_a to x_b with
no structured seed, so the optimizer has to discover the shape by itself; it
may fail, in which case the best iterate is returned with ``status=failed``.
"""

from __future__ import annotations

import math
import time

import numpy as np

from . import kernels
from .core import CurveSamples, SolveReport, Status, apply_isometry, canonical_pose, discrete_bending_energy
from .optimizer import ConstrainedProblem, OptimizerSettings, minimize_equality_constrained
from .solver import Solution
from .spline import natural_cubic_fit

METHOD = "standard_discretisation"


def polyline_problem(n: int, h: float, fixed_points: dict) -> ConstrainedProblem:
    """Segment-length-constrained turning-angle problem on n + 1 vertices."""

    def objective(x):
        f, g = kernels.polyline_objective(np.ascontiguousarray(x.reshape(-1, 2)))
        return f, g.reshape(-1)

    def constraints(x):
        pts = x.reshape(-1, 2)
        d = pts[2:-1] - pts[1:-2]  # segments 1 .. n-2
        c = (np.einsum("ij,ij->i", d, d) - h * h) / (2.0 * h)
        k = d.shape[0]
        jac = np.zeros((k, 2 * (n + 1)))
        rows = np.arange(k)
        for col in (0, 1):
            jac[rows, 2 * (rows + 2) + col] = d[:, col] / h
            jac[rows, 2 * (rows + 1) + col] = -d[:, col] / h
        return c, jac

    fixed = sorted(2 * j + col for j in fixed_points for col in (0, 1))
    return ConstrainedProblem(2 * (n + 1), objective, constraints, fixed)


def segment_headings(points) -> np.ndarray:
    d = np.diff(points, axis=0)
    raw = np.arctan2(d[:, 1], d[:, 0])
    turn = np.diff(raw)
    turn = (turn + math.pi) % (2 * math.pi) - math.pi
    return raw[0] + np.concatenate(([0.0], np.cumsum(turn)))


def standard_discretisation(p, n: int = 100, s: OptimizerSettings | None = None) -> Solution:
    started = time.perf_counter()
    n = int(n)
    if n < 4:
        raise ValueError(f"the polyline baseline needs n >= 4, got {n}")
    canon, iso = canonical_pose(p)
    h = canon.length / n
    fixed = {
        0: canon.x_a,
        1: canon.x_a + h * canon.v_a,
        n - 1: canon.x_b - h * canon.v_b,
        n: canon.x_b,
    }
    frac = np.linspace(0.0, 1.0, n + 1)[:, None]
    pts0 = canon.x_a + frac * (canon.x_b - canon.x_a)
    for j, pt in fixed.items():
        pts0[j] = pt
    problem = polyline_problem(n, h, fixed)
    x, opt = minimize_equality_constrained(problem, pts0.reshape(-1), s)
    pts = x.reshape(-1, 2)

    psi = segment_headings(pts)
    energy = discrete_bending_energy(psi, h)
    t = np.linspace(canon.a, canon.b, n + 1)
    mids = 0.5 * (t[:-1] + t[1:])
    profile = natural_cubic_fit(
        np.concatenate(([t[0]], mids, [t[-1]])), np.concatenate(([psi[0]], psi, [psi[-1]]))
    )
    vertex_heading = np.concatenate(([psi[0]], 0.5 * (psi[:-1] + psi[1:]), [psi[-1]]))
    curvature = np.concatenate(([0.0], np.diff(psi) / h, [0.0]))
    curve = apply_isometry(CurveSamples(t, pts, vertex_heading, curvature), iso)

    status = Status.CONVERGED if opt.status is Status.CONVERGED else Status.FAILED
    report = SolveReport(
        energy=energy,
        constraint_residual=opt.constraint_residual,
        iterations=opt.iterations,
        elapsed=time.perf_counter() - started,
        status=status,
        outer_iterations=opt.outer_iterations,
        method=METHOD,
        n=n,
        message=opt.message if status is Status.CONVERGED else f"{opt.status.value}: {opt.message}",
        objective=opt.objective,
        multipliers=opt.multipliers,
        kkt_residual=opt.kkt_residual,
    )
    return Solution(
        problem=p,
        heading=profile.shifted(iso.rotation),
        curve=curve,
        report=report,
        n=n,
        phi=psi,
        isometry=iso,
        canonical_heading=profile,
    )
