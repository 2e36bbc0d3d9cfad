"""Clamped planar elastica.

A boundary-data seed refined by constrained minimization of the discrete
bending energy, closed-form reference elastica built on Jacobi elliptic
functions, and a polyline baseline for comparison.
"""

__version__ = "0.1.0"

from .baseline import standard_discretisation
from .closed_form import ClosedFormParams, elastica_ode_residual, reference_problem, sample_reference
from .core import (
    BoundaryProblem,
    CurveSamples,
    PlanarIsometry,
    SolveReport,
    Status,
    canonical_pose,
    discrete_bending_energy,
    validate_problem,
)
from .elliptic import complete_elliptic_k, incomplete_elliptic_f, jacobi_am, jacobi_ellipj
from .errors import ElasticaError, EndpointMiss
from .optimizer import OptimizerSettings, minimize_equality_constrained
from .seed import interior_tangent_estimates, seed_profile
from .solver import Solution, continuation_solve, solve_clamped_elastica, solve_from_heading
from .spline import HeadingProfile, natural_cubic_fit

__all__ = [
    "BoundaryProblem",
    "ClosedFormParams",
    "CurveSamples",
    "ElasticaError",
    "EndpointMiss",
    "HeadingProfile",
    "OptimizerSettings",
    "PlanarIsometry",
    "Solution",
    "SolveReport",
    "Status",
    "canonical_pose",
    "complete_elliptic_k",
    "continuation_solve",
    "discrete_bending_energy",
    "elastica_ode_residual",
    "incomplete_elliptic_f",
    "interior_tangent_estimates",
    "jacobi_am",
    "jacobi_ellipj",
    "minimize_equality_constrained",
    "natural_cubic_fit",
    "reference_problem",
    "sample_reference",
    "seed_profile",
    "solve_clamped_elastica",
    "solve_from_heading",
    "standard_discretisation",
    "validate_problem",
]
