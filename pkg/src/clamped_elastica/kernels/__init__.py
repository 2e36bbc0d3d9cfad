"""Hot numeric kernels with two interchangeable backends.

``numba``  loop kernels compiled with ``@njit(cache=True)``.
``numpy``  vectorized pure-numpy equivalents.

The default is numba when it imports cleanly; set ``ELASTICA_NUMBA=0`` in the
environment to force the numpy path.  :func:`use_backend` switches at runtime
(used by the tests and the benchmark to compare both).
"""

from __future__ import annotations

import contextlib
import importlib
import os

from . import _numpy

_NAMES = (
    "agm_amplitude",
    "adaptive_simpson_curvature",
    "tridiag_solve",
    "spline_eval",
    "closure_and_jacobian",
    "polyline_objective",
)

_nb_module = None
_nb_error = None


def _load_numba():
    global _nb_module, _nb_error
    if _nb_module is None and _nb_error is None:
        try:
            _nb_module = importlib.import_module(__name__ + "._numba")
        except Exception as exc:  # numba missing or broken
            _nb_error = exc
    return _nb_module


def numba_available() -> bool:
    return _load_numba() is not None


def _env_default() -> str:
    flag = os.environ.get("ELASTICA_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return "numpy"
    return "numba" if numba_available() else "numpy"


_backend = _env_default()


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not numba_available():
        raise RuntimeError(f"numba backend unavailable: {_nb_error}")
    _backend = name


@contextlib.contextmanager
def use_backend(name: str):
    old = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def _impl(name):
    mod = _nb_module if _backend == "numba" else _numpy
    return getattr(mod, name)


def agm_amplitude(u, m):
    return _impl("agm_amplitude")(u, m)


def adaptive_simpson_curvature(family, kappa0, m, t0, lo, hi, tol):
    return _impl("adaptive_simpson_curvature")(family, kappa0, m, t0, lo, hi, tol)


def tridiag_solve(lower, diag, upper, rhs):
    return _impl("tridiag_solve")(lower, diag, upper, rhs)


def spline_eval(knots, coeffs, t, order):
    return _impl("spline_eval")(knots, coeffs, t, order)


def closure_and_jacobian(phi, q):
    return _impl("closure_and_jacobian")(phi, q)


def polyline_objective(points):
    return _impl("polyline_objective")(points)


def warmup() -> None:
    """Trigger JIT compilation of every numba kernel (no-op on the numpy path)."""
    if _backend != "numba":
        return
    import numpy as np

    u = np.linspace(-1.0, 1.0, 3)
    agm_amplitude(u, 0.5)
    adaptive_simpson_curvature(0, 1.0, 0.5, 0.0, u[:-1], u[1:], 1e-10)
    adaptive_simpson_curvature(2, 1.0, 1.0, 0.0, u[:-1], u[1:], 1e-10)
    tridiag_solve(np.ones(2), np.full(3, 4.0), np.ones(2), np.ones(3))
    coeffs = np.zeros((2, 4))
    for order in (0, 1, 2):
        spline_eval(u, coeffs, u, order)
    closure_and_jacobian(u, np.ones(3))
    polyline_objective(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.5]]))
