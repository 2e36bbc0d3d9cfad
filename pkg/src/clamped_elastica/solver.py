"""Seed-then-optimize solver for the clamped elastica.

The seed lifting is sampled on ``n + 1`` equally spaced times and refined by
minimizing ``sum((phi[j] - phi[j-1])**2)`` with both end headings pinned,
subject to the Simpson closure ``S(phi) = x_b - x_a``.  The minimizer is
interpolated by a natural cubic spline and integrated back into a curve.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import (
    BoundaryProblem,
    CurveSamples,
    PlanarIsometry,
    SolveReport,
    Status,
    apply_isometry,
    canonical_pose,
    discrete_bending_energy,
)
from .errors import EndpointMiss
from .optimizer import ConstrainedProblem, OptimizerSettings, minimize_equality_constrained
from .quadrature import closure_and_jacobian, integrate_heading, simpson_weights
from .seed import seed_profile
from .spline import HeadingProfile, evaluate, natural_cubic_fit

DEFAULT_N = 40
DEFAULT_SAMPLES = 201
ENDPOINT_MISS_TOL = 1e-2
METHOD = "seed_then_optimize"


@dataclass(frozen=True)
class Solution:
    problem: BoundaryProblem
    heading: HeadingProfile
    curve: CurveSamples
    report: SolveReport
    n: int
    phi: np.ndarray
    isometry: PlanarIsometry
    canonical_heading: HeadingProfile

    @property
    def energy(self) -> float:
        return self.report.energy


def normalize_subdivision(n: int) -> int:
    """Round ``n`` up to an even count; it must exceed 4."""
    n = int(n)
    if n <= 4:
        raise ValueError(f"subdivision count must be greater than 4, got {n}")
    return n + (n % 2)


def nearest_representative(angle: float, target: float) -> float:
    """``angle + 2 pi k`` closest to ``target``."""
    return angle + 2 * math.pi * round((target - angle) / (2 * math.pi))


def heading_problem(canon: BoundaryProblem, n: int) -> tuple:
    """Objective, constraints and weights of the discretized problem on ``n`` steps."""
    w = simpson_weights(n, canon.length / n)
    target = canon.x_b - canon.x_a

    def objective(phi):
        d = np.diff(phi)
        g = np.zeros_like(phi)
        g[1:] += 2.0 * d
        g[:-1] -= 2.0 * d
        return float(d @ d), g

    def constraints(phi):
        closure, jac = closure_and_jacobian(phi, w)
        return closure - target, jac

    return ConstrainedProblem(n + 1, objective, constraints, (0, n)), w


def _refine(canon, iso, phi0, n, settings, n_samples, started):
    h = canon.length / n
    problem, _ = heading_problem(canon, n)
    phi0 = np.array(phi0, dtype=float)
    phi0[0] = 0.0
    phi0[n] = nearest_representative(math.atan2(canon.v_b[1], canon.v_b[0]), phi0[n])
    phi, opt = minimize_equality_constrained(problem, phi0, settings)

    t = np.linspace(canon.a, canon.b, n + 1)
    profile = natural_cubic_fit(t, phi)
    curve = apply_isometry(integrate_heading(profile, (0.0, 0.0), n_samples), iso)
    report = SolveReport(
        energy=discrete_bending_energy(phi, h),
        constraint_residual=opt.constraint_residual,
        iterations=opt.iterations,
        elapsed=time.perf_counter() - started,
        status=opt.status,
        outer_iterations=opt.outer_iterations,
        method=METHOD,
        n=n,
        message=opt.message,
        objective=opt.objective,
        multipliers=opt.multipliers,
        kkt_residual=opt.kkt_residual,
    )
    sol = Solution(
        problem=None,
        heading=profile.shifted(iso.rotation),
        curve=curve,
        report=report,
        n=n,
        phi=phi,
        isometry=iso,
        canonical_heading=profile,
    )
    return sol


def _finish(sol: Solution, p: BoundaryProblem) -> Solution:
    sol = Solution(p, sol.heading, sol.curve, sol.report, sol.n, sol.phi, sol.isometry, sol.canonical_heading)
    miss = float(np.linalg.norm(sol.curve.position[-1] - p.x_b))
    if sol.report.status is Status.CONVERGED and miss > max(1.0, p.length) * ENDPOINT_MISS_TOL:
        raise EndpointMiss(f"reconstructed end misses x_b by {miss:.3g}; increase n", sol)
    return sol


def _from_seed(p, n, s, n_samples):
    started = time.perf_counter()
    n = normalize_subdivision(n)
    seed, iso = seed_profile(p)
    canon, _ = canonical_pose(p)
    t = np.linspace(canon.a, canon.b, n + 1)
    return _refine(canon, iso, evaluate(seed, t), n, s, n_samples, started)


def _from_heading(p, initial, n, s, n_samples):
    started = time.perf_counter()
    n = normalize_subdivision(n)
    canon, iso = canonical_pose(p)
    t = np.linspace(canon.a, canon.b, n + 1)
    return _refine(canon, iso, evaluate(initial, t), n, s, n_samples, started)


def solve_clamped_elastica(
    p: BoundaryProblem,
    n: int = DEFAULT_N,
    s: OptimizerSettings | None = None,
    n_samples: int = DEFAULT_SAMPLES,
) -> Solution:
    """Solve the clamped problem from the boundary-data seed on ``n`` steps."""
    return _finish(_from_seed(p, n, s, n_samples), p)


def solve_from_heading(
    p: BoundaryProblem,
    initial: HeadingProfile,
    n: int = DEFAULT_N,
    s: OptimizerSettings | None = None,
    n_samples: int = DEFAULT_SAMPLES,
) -> Solution:
    """Refine from a given canonical-frame heading profile instead of the seed."""
    return _finish(_from_heading(p, initial, n, s, n_samples), p)


def continuation_solve(
    p: BoundaryProblem,
    n_schedule,
    s: OptimizerSettings | None = None,
    n_samples: int = DEFAULT_SAMPLES,
) -> Solution:
    """Solve on a coarse grid, then re-solve on finer grids from the previous result.

    Only the last stage reached is checked against the endpoint tolerance.
    """
    schedule = [int(n) for n in n_schedule]
    if not schedule:
        raise ValueError("schedule must not be empty")
    if any(n % 2 for n in schedule) or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError(f"schedule must be ascending even counts, got {schedule}")
    stages = []
    sol = _from_seed(p, schedule[0], s, n_samples)
    stages.append(sol.report.to_dict())
    for n in schedule[1:]:
        if not sol.report.converged:
            break
        sol = _from_heading(p, sol.canonical_heading, n, s, n_samples)
        stages.append(sol.report.to_dict())
    sol.report.stages = stages
    return _finish(sol, p)
