"""Problem definition, planar isometries, curve samples and the discrete energy.

All numerics downstream happen in the *canonical frame*, where the curve
starts at the origin heading along +x.  :func:`canonical_pose` produces that
frame together with the isometry that maps results back.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np

from .errors import DegenerateInterval, InfeasibleChord, NonUnitTangent, ProblemError

UNIT_TOL_INPUT = 1e-9
UNIT_TOL_INTERNAL = 1e-12
CHORD_SLACK = 1e-12

PROBLEM_SCHEMA = 1


def _vec2(v, name):
    arr = np.array(v, dtype=float).reshape(-1)
    if arr.shape != (2,):
        raise ProblemError(f"field '{name}' must be a pair of numbers, got {v!r}")
    if not np.all(np.isfinite(arr)):
        raise ProblemError(f"field '{name}' must be finite, got {v!r}")
    arr.setflags(write=False)
    return arr


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BoundaryProblem:
    """Clamped boundary data: unit-speed curve on [a, b] from (x_a, v_a) to (x_b, v_b)."""

    a: float
    b: float
    x_a: np.ndarray
    x_b: np.ndarray
    v_a: np.ndarray
    v_b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        for name in ("x_a", "x_b", "v_a", "v_b"):
            object.__setattr__(self, name, _vec2(getattr(self, name), name))

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def chord(self) -> np.ndarray:
        return self.x_b - self.x_a

    def to_dict(self) -> dict:
        return {
            "schema": PROBLEM_SCHEMA,
            "a": self.a,
            "b": self.b,
            "xa": self.x_a.tolist(),
            "xb": self.x_b.tolist(),
            "va": self.v_a.tolist(),
            "vb": self.v_b.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundaryProblem":
        if not isinstance(data, dict):
            raise ProblemError("problem JSON must be an object")
        schema = data.get("schema", PROBLEM_SCHEMA)
        if schema != PROBLEM_SCHEMA:
            raise ProblemError(f"field 'schema': unsupported version {schema!r}")
        missing = [k for k in ("a", "b", "xa", "xb", "va", "vb") if k not in data]
        if missing:
            raise ProblemError(f"missing field(s): {', '.join(missing)}")
        for k in ("a", "b"):
            if not isinstance(data[k], (int, float)) or isinstance(data[k], bool):
                raise ProblemError(f"field '{k}' must be a number, got {data[k]!r}")
        return cls(data["a"], data["b"], data["xa"], data["xb"], data["va"], data["vb"])


@dataclass(frozen=True)
class PlanarIsometry:
    """Rotation by ``rotation`` radians followed by translation."""

    rotation: float = 0.0
    translation: np.ndarray = field(default_factory=lambda: _frozen([0.0, 0.0]))

    def __post_init__(self):
        object.__setattr__(self, "rotation", float(self.rotation))
        object.__setattr__(self, "translation", _vec2(self.translation, "translation"))

    @property
    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return np.array([[c, -s], [s, c]])

    def apply_vector(self, v) -> np.ndarray:
        return np.asarray(v, dtype=float) @ self.matrix.T

    def apply_point(self, x) -> np.ndarray:
        return self.apply_vector(x) + self.translation

    def inverse(self) -> "PlanarIsometry":
        rot = -self.rotation
        c, s = math.cos(rot), math.sin(rot)
        tx, ty = self.translation
        return PlanarIsometry(rot, (-(c * tx - s * ty), -(s * tx + c * ty)))

    def compose(self, other: "PlanarIsometry") -> "PlanarIsometry":
        """``self ∘ other``: apply ``other`` first."""
        return PlanarIsometry(
            self.rotation + other.rotation, self.apply_point(other.translation)
        )


@dataclass(frozen=True)
class CurveSamples:
    """Sampled curve: times, positions (N, 2), headings and curvatures."""

    t: np.ndarray
    position: np.ndarray
    heading: np.ndarray
    curvature: np.ndarray

    def __post_init__(self):
        t = _frozen(self.t)
        pos = _frozen(self.position)
        th = _frozen(self.heading)
        k = _frozen(self.curvature)
        n = t.shape[0]
        if n < 2 or pos.shape != (n, 2) or th.shape != (n,) or k.shape != (n,):
            raise ValueError("curve samples need equal lengths >= 2 and (N, 2) positions")
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")
        if np.any(np.abs(np.diff(th)) >= math.pi):
            raise ValueError("heading is not a continuous lifting (jump >= pi)")
        for name, arr in (("t", t), ("position", pos), ("heading", th), ("curvature", k)):
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.t.shape[0]


class Status(str, Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    INFEASIBLE = "infeasible"
    FAILED = "failed"


@dataclass
class SolveReport:
    energy: float
    constraint_residual: float
    iterations: int
    elapsed: float
    status: Status
    outer_iterations: int = 0
    method: str = ""
    n: int = 0
    message: str = ""
    objective: float | None = None
    multipliers: list = field(default_factory=list)
    kkt_residual: float | None = None
    stages: list = field(default_factory=list)

    def __post_init__(self):
        if self.constraint_residual < 0 or self.energy < 0:
            raise ValueError("energy and constraint residual must be non-negative")
        self.status = Status(self.status)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["status"] = self.status.value
        d["stages"] = [dict(s) for s in self.stages]
        if not timing:
            d.pop("elapsed")
            for s in d["stages"]:
                s.pop("elapsed", None)
        return d


def validate_problem(p: BoundaryProblem) -> BoundaryProblem:
    """Check the boundary data, renormalizing tangents that are unit to within 1e-9."""
    if not p.b > p.a:
        raise DegenerateInterval(f"need b > a, got a={p.a}, b={p.b}")
    tangents = {}
    for name in ("v_a", "v_b"):
        v = getattr(p, name)
        norm = math.hypot(v[0], v[1])
        if abs(norm - 1.0) > UNIT_TOL_INPUT:
            raise NonUnitTangent(f"{name} has norm {norm!r}; expected 1 within {UNIT_TOL_INPUT}")
        tangents[name] = v / norm if norm != 1.0 else v
    chord = math.hypot(*(p.x_b - p.x_a))
    if chord > p.length * (1.0 + CHORD_SLACK):
        raise InfeasibleChord(f"chord {chord!r} exceeds length {p.length!r}")
    if tangents["v_a"] is p.v_a and tangents["v_b"] is p.v_b:
        return p
    return BoundaryProblem(p.a, p.b, p.x_a, p.x_b, tangents["v_a"], tangents["v_b"])


def canonical_pose(p: BoundaryProblem) -> tuple[BoundaryProblem, PlanarIsometry]:
    """Move ``p`` so that x_a = (0, 0), v_a = (1, 0).

    Returns the canonical problem and the isometry mapping canonical data back
    onto the original.
    """
    p = validate_problem(p)
    iso = PlanarIsometry(math.atan2(p.v_a[1], p.v_a[0]), p.x_a)
    inv = iso.inverse()
    xb = inv.apply_vector(p.x_b - p.x_a)
    vb = inv.apply_vector(p.v_b)
    vb = vb / math.hypot(vb[0], vb[1])
    canon = BoundaryProblem(p.a, p.b, (0.0, 0.0), xb, (1.0, 0.0), vb)
    return canon, iso


def apply_isometry(c: CurveSamples, iso: PlanarIsometry) -> CurveSamples:
    return CurveSamples(
        c.t, iso.apply_point(c.position), c.heading + iso.rotation, c.curvature
    )


def discrete_bending_energy(phi, h: float) -> float:
    """Discrete bending energy ``sum((phi[j] - phi[j-1])**2) / (2 h)``.

    The sum is correctly rounded, so it does not depend on the order of the
    steps (reversing ``phi`` gives the identical value).
    """
    phi = np.asarray(phi, dtype=float)
    if phi.ndim != 1 or phi.shape[0] < 2:
        raise ValueError("need at least two headings")
    if not h > 0:
        raise ValueError("step h must be positive")
    d = np.diff(phi)
    return math.fsum(d * d) / (2.0 * h)
