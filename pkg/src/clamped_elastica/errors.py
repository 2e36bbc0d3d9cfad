"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the CLI emits in
its JSON diagnostics.
"""


class ElasticaError(Exception):
    code = "elastica_error"


class ProblemError(ElasticaError, ValueError):
    """Invalid boundary data."""

    code = "invalid_problem"


class InfeasibleChord(ProblemError):
    code = "infeasible_chord"


class DegenerateInterval(ProblemError):
    code = "degenerate_interval"


class NonUnitTangent(ProblemError):
    code = "non_unit_tangent"


class DomainError(ElasticaError, ValueError):
    """Elliptic integral requested outside its real domain."""

    code = "domain_error"


class OddSubdivision(ElasticaError, ValueError):
    code = "odd_subdivision"


class LengthMismatch(ElasticaError, ValueError):
    code = "length_mismatch"


class TooFewKnots(ElasticaError, ValueError):
    code = "too_few_knots"


class NonAscendingKnots(ElasticaError, ValueError):
    code = "non_ascending_knots"


class DegenerateSeed(ElasticaError):
    """An interior tangent estimate has (nearly) vanished before normalization."""

    code = "degenerate_seed"


class NonFiniteEvaluation(ElasticaError, FloatingPointError):
    code = "non_finite_evaluation"


class EndpointMiss(ElasticaError):
    """Optimizer converged but the reconstructed curve misses x_b; n is too small."""

    code = "endpoint_miss"

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution
