"""Smooth equality-constrained minimization: augmented Lagrangian over BFGS.

Minimizes ``f(x)`` subject to ``c(x) = 0`` with the Lagrangian sign convention
``L = f + lam . c``.  Pinned variables are removed from the search space.
Everything is deterministic: no randomness, fixed iteration order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import SolveReport, Status
from .errors import NonFiniteEvaluation

ARMIJO_C1 = 1e-4
MAX_BACKTRACKS = 40
MERIT_SLACK = 1e-14
PENALTY_GROWTH = 10.0
REQUIRED_SHRINK = 0.25
MAX_PENALTY = 1e14
INNER_TOL0 = 1e-2
INNER_DECAY = 0.1


@dataclass
class ConstrainedProblem:
    """``objective(x) -> (f, grad)``; ``constraints(x) -> (c, jac)`` with jac of shape (k, d)."""

    dimension: int
    objective: Callable[[np.ndarray], tuple]
    constraints: Callable[[np.ndarray], tuple]
    fixed_indices: Sequence[int] = field(default_factory=tuple)


@dataclass(frozen=True)
class OptimizerSettings:
    constraint_tol: float = 1e-10
    gradient_tol: float = 1e-8
    max_outer: int = 50
    max_inner: int = 200
    initial_penalty: float = 10.0

    def __post_init__(self):
        for name in ("constraint_tol", "gradient_tol", "max_outer", "max_inner", "initial_penalty"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


def _check_finite(*values):
    for v in values:
        if not np.all(np.isfinite(v)):
            return False
    return True


class _Merit:
    """Augmented Lagrangian restricted to the free variables."""

    def __init__(self, problem, x_full, free, lam, rho):
        self.problem = problem
        self.x_full = x_full.copy()
        self.free = free
        self.lam = lam
        self.rho = rho

    def full(self, z):
        x = self.x_full.copy()
        x[self.free] = z
        return x

    def __call__(self, z):
        x = self.full(z)
        f, g = self.problem.objective(x)
        c, jac = self.problem.constraints(x)
        if not _check_finite(f, g, c, jac):
            return np.inf, None
        mult = self.lam + self.rho * c
        merit = f + self.lam @ c + 0.5 * self.rho * (c @ c)
        grad = np.asarray(g) + jac.T @ mult
        return float(merit), grad[self.free]


def _bfgs(fun, z, tol, max_iter, callback=None, hinv=None):
    """Quasi-Newton minimization with backtracking Armijo steps.

    ``hinv`` warm-starts the inverse Hessian approximation.  Returns
    ``(z, merit, grad, iterations, hinv)``.
    """
    m, g = fun(z)
    if g is None:
        raise NonFiniteEvaluation("objective or constraints not finite at the start point")
    eye = np.eye(z.shape[0])
    it = 0
    while it < max_iter:
        gnorm = np.linalg.norm(g)
        if gnorm <= tol:
            break
        d = -g / max(1.0, gnorm) if hinv is None else -hinv @ g
        slope = g @ d
        if slope >= 0:
            hinv = None
            d = -g / max(1.0, gnorm)
            slope = g @ d
        step = 1.0
        slack = MERIT_SLACK * max(1.0, abs(m))
        for _ in range(MAX_BACKTRACKS):
            z_new = z + step * d
            m_new, g_new = fun(z_new)
            if g_new is not None and m_new <= m + ARMIJO_C1 * step * slope + slack:
                break
            step *= 0.5
        else:
            if hinv is None:
                break  # stalled even along steepest descent
            hinv = None
            continue
        it += 1
        s = z_new - z
        y = g_new - g
        sy = s @ y
        if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
            if hinv is None:
                hinv = (sy / (y @ y)) * eye
            r = 1.0 / sy
            v = eye - r * np.outer(s, y)
            hinv = v @ hinv @ v.T + r * np.outer(s, s)
        z, m, g = z_new, m_new, g_new
        if callback is not None:
            callback(z, m)
    return z, m, g, it, hinv


def minimize_equality_constrained(
    p: ConstrainedProblem, x0, s: OptimizerSettings | None = None, callback=None
) -> tuple[np.ndarray, SolveReport]:
    """Augmented-Lagrangian minimization started at ``x0``.

    ``callback(outer, z_free, merit)`` is called after every accepted inner step.
    Inner solves start loose and tighten geometrically down to ``gradient_tol``;
    the BFGS matrix carries over between outer iterations.
    The report's ``energy`` field carries the objective value.
    """
    s = s or OptimizerSettings()
    start = time.perf_counter()
    x = np.array(x0, dtype=float)
    if x.shape != (p.dimension,):
        raise ValueError(f"start vector has shape {x.shape}, expected ({p.dimension},)")
    if not np.all(np.isfinite(x)):
        raise NonFiniteEvaluation("start vector is not finite")
    free = np.ones(p.dimension, dtype=bool)
    free[list(p.fixed_indices)] = False

    c, _ = p.constraints(x)
    f, _ = p.objective(x)
    if not _check_finite(f, c):
        raise NonFiniteEvaluation("objective or constraints not finite at the start point")
    lam = np.zeros(c.shape[0])
    rho = float(s.initial_penalty)
    prev_cnorm = np.linalg.norm(c)
    total_inner = 0
    status = Status.MAX_ITERATIONS
    message = "outer iteration limit reached"
    best = None
    outer = 0
    kkt = np.inf

    hinv = None
    while outer < s.max_outer:
        outer += 1
        merit = _Merit(p, x, free, lam, rho)
        cb = None if callback is None else (lambda z, m, _o=outer: callback(_o, z, m))
        inner_tol = max(s.gradient_tol, INNER_TOL0 * INNER_DECAY ** (outer - 1))
        z, _, g_free, its, hinv = _bfgs(merit, x[free], inner_tol, s.max_inner, cb, hinv)
        total_inner += its
        x = merit.full(z)
        f, _ = p.objective(x)
        c, _ = p.constraints(x)
        cnorm = float(np.linalg.norm(c))
        kkt = float(np.linalg.norm(g_free))
        lam = lam + rho * c
        if best is None or cnorm < best[0] or (cnorm == best[0] and f < best[1]):
            best = (cnorm, f, x.copy(), lam.copy(), kkt)
        if cnorm <= s.constraint_tol and kkt <= s.gradient_tol:
            status, message = Status.CONVERGED, "constraint and gradient tolerances met"
            best = (cnorm, f, x.copy(), lam.copy(), kkt)
            break
        if cnorm > REQUIRED_SHRINK * prev_cnorm:
            rho *= PENALTY_GROWTH
            if rho > MAX_PENALTY:
                status, message = Status.FAILED, "penalty parameter blew up"
                break
        prev_cnorm = cnorm

    cnorm, f, x, lam, kkt = best
    report = SolveReport(
        energy=max(float(f), 0.0),
        constraint_residual=cnorm,
        iterations=total_inner,
        elapsed=time.perf_counter() - start,
        status=status,
        outer_iterations=outer,
        method="augmented_lagrangian_bfgs",
        message=message,
        objective=float(f),
        multipliers=lam.tolist(),
        kkt_residual=kkt,
    )
    return x, report
