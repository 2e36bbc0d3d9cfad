"""Jacobi elliptic functions in the *parameter* convention.

Every function here takes the parameter ``m`` that multiplies ``sin(psi)**2``::

    F(phi, m) = integral_0^phi  dpsi / sqrt(1 - m sin(psi)**2)

so ``m = k**2`` for modulus ``k``.  Values ``m > 1`` are supported (and needed:
the orbitlike reference curve uses ``m = 2``) through the reciprocal-parameter
transformation

    sn(u, m) = sn(sqrt(m) u, 1/m) / sqrt(m)
    cn(u, m) = dn(sqrt(m) u, 1/m)
    dn(u, m) = cn(sqrt(m) u, 1/m)

which keeps ``dn`` signed, so ``d am/du = dn`` holds everywhere.  ``m = 1`` uses
the hyperbolic limits.  Negative ``m`` is not supported.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .errors import DomainError


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return np.ascontiguousarray(arr.reshape(-1)), arr.shape


def _restore(values, shape):
    if shape == ():
        return float(values[0])
    return values.reshape(shape)


def _check_m(m):
    m = float(m)
    if not m >= 0.0 or not math.isfinite(m):
        raise DomainError(f"elliptic parameter must be finite and >= 0, got {m!r}")
    return m


def complete_elliptic_k(m: float) -> float:
    """K(m) = F(pi/2, m) for 0 <= m < 1, by the arithmetic-geometric mean."""
    m = _check_m(m)
    if m >= 1.0:
        raise DomainError("K(m) is finite only for m < 1")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(kernels._numpy.AGM_MAXITER):
        if abs(a - b) <= kernels._numpy.AGM_RTOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def carlson_rf(x, y, z):
    """Carlson's symmetric integral R_F by duplication (vectorized)."""
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z)))
    x, y, z = x.copy(), y.copy(), z.copy()
    for _ in range(60):
        mu = (x + y + z) / 3.0
        dev = np.max(np.abs(np.stack((1 - x / mu, 1 - y / mu, 1 - z / mu))))
        if dev < 1e-3:
            break
        sx, sy, sz = np.sqrt(x), np.sqrt(y), np.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
    mu = (x + y + z) / 3.0
    dx, dy, dz = 1 - x / mu, 1 - y / mu, 1 - z / mu
    e2 = dx * dy + dy * dz + dz * dx
    e3 = dx * dy * dz
    series = (
        1
        - e2 / 10
        + e3 / 14
        + e2**2 / 24
        - 3 * e2 * e3 / 44
        - 5 * e2**3 / 208
        + 3 * e3**2 / 104
        + e2**2 * e3 / 16
    )
    return series / np.sqrt(mu)


def incomplete_elliptic_f(phi, m):
    """Incomplete elliptic integral of the first kind F(phi | m).

    For ``m > 1`` the integrand is real only while ``|phi| <= arcsin(1/sqrt(m))``;
    beyond that :class:`DomainError` is raised.  For ``m = 1`` the limit is
    ``|phi| < pi/2``.
    """
    m = _check_m(m)
    phi_flat, shape = _as_array(phi)
    if m == 0.0:
        return _restore(phi_flat.copy(), shape)
    if m < 1.0:
        j = np.round(phi_flat / math.pi)
        r = phi_flat - j * math.pi
        s, c = np.sin(r), np.cos(r)
        out = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0)
        if np.any(j != 0):
            out = out + 2.0 * j * complete_elliptic_k(m)
        return _restore(out, shape)
    limit = math.pi / 2 if m == 1.0 else math.asin(1.0 / math.sqrt(m))
    bad = np.abs(phi_flat) >= limit if m == 1.0 else np.abs(phi_flat) > limit * (1 + 1e-12)
    if np.any(bad):
        raise DomainError(
            f"F(phi | m={m}) is not real for |phi| beyond {limit!r}"
        )
    s, c = np.sin(phi_flat), np.cos(phi_flat)
    out = s * carlson_rf(c * c, np.maximum(1.0 - m * s * s, 0.0), 1.0)
    return _restore(out, shape)


def jacobi_ellipj(u, m):
    """Return ``(sn, cn, dn, am)`` at ``u`` for parameter ``m >= 0``."""
    m = _check_m(m)
    u_flat, shape = _as_array(u)
    if m < 1.0:
        am, dn = kernels.agm_amplitude(u_flat, m)
        sn, cn = np.sin(am), np.cos(am)
    elif m == 1.0:
        sn = np.tanh(u_flat)
        cn = 1.0 / np.cosh(u_flat)
        dn = cn.copy()
        am = 2.0 * np.arctan(np.tanh(0.5 * u_flat))
    else:
        root = math.sqrt(m)
        mu = 1.0 / m
        phi, dn_std = kernels.agm_amplitude(np.ascontiguousarray(root * u_flat), mu)
        sn = np.sin(phi) / root
        cn = dn_std
        dn = np.cos(phi)
        am = np.arcsin(sn)
    return tuple(_restore(v, shape) for v in (sn, cn, dn, am))


def jacobi_sn_cn_dn(u, m):
    sn, cn, dn, _ = jacobi_ellipj(u, m)
    return sn, cn, dn


def jacobi_am(u, m):
    """Jacobi amplitude, the inverse of ``phi -> F(phi | m)``, continuous in ``u``.

    For ``m <= 1`` it increases monotonically; for ``m > 1`` it oscillates
    within ``+-arcsin(1/sqrt(m))``.
    """
    m = _check_m(m)
    if m == 0.0:
        u_flat, shape = _as_array(u)
        return _restore(u_flat.copy(), shape)
    return jacobi_ellipj(u, m)[3]
