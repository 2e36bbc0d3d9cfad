"""Vectorized numpy implementations of the hot kernels."""

import numpy as np

AGM_RTOL = 1e-15
AGM_MAXITER = 32

WAVELIKE, ORBITLIKE, BORDERLINE = 0, 1, 2


def agm_sequence(m):
    """Arithmetic-geometric mean ladder (a_n, c_n) for parameter 0 <= m < 1."""
    a, b, c = 1.0, np.sqrt(1.0 - m), np.sqrt(m)
    aa, cc = [a], [c]
    for _ in range(AGM_MAXITER):
        if abs(c) <= AGM_RTOL * a:
            break
        a, b, c = 0.5 * (a + b), np.sqrt(a * b), 0.5 * (a - b)
        aa.append(a)
        cc.append(c)
    return aa, cc


def agm_amplitude(u, m):
    """Jacobi amplitude and dn for 0 <= m < 1 by descending Landen/AGM."""
    u = np.asarray(u, dtype=float)
    aa, cc = agm_sequence(m)
    n = len(aa) - 1
    phi = (2.0**n) * aa[n] * u
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(cc[k] / aa[k] * np.sin(phi)))
    s = np.sin(phi)
    dn = np.sqrt(1.0 - m * s * s)
    return phi, dn


def curvature(family, kappa0, m, t0, t):
    s = kappa0 * (np.asarray(t, dtype=float) - t0)
    if family == WAVELIKE:
        phi, _ = agm_amplitude(s / (2.0 * np.sqrt(m)), m)
        return kappa0 * np.cos(phi)
    if family == BORDERLINE:
        return kappa0 / np.cosh(0.5 * s)
    raise ValueError("adaptive quadrature only serves wavelike/borderline curvature")


def _simpson(family, kappa0, m, t0, lo, hi, panels):
    # panels Simpson panels per segment, all segments at once
    x = np.linspace(0.0, 1.0, 2 * panels + 1)
    w = np.ones(2 * panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    width = hi - lo
    pts = lo[:, None] + width[:, None] * x[None, :]
    vals = curvature(family, kappa0, m, t0, pts)
    return (vals @ w) * width / (6.0 * panels)


def adaptive_simpson_curvature(family, kappa0, m, t0, lo, hi, tol):
    """Integral of curvature over each [lo_i, hi_i] to absolute tolerance ``tol``.

    Globally adaptive: every unresolved segment doubles its panel count until
    successive Simpson estimates agree.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    out = np.empty(lo.shape[0])
    todo = np.arange(lo.shape[0])
    coarse = _simpson(family, kappa0, m, t0, lo, hi, 1)
    panels = 1
    while todo.size:
        panels *= 2
        fine = _simpson(family, kappa0, m, t0, lo[todo], hi[todo], panels)
        err = np.abs(fine - coarse)
        done = (err <= 15.0 * tol) | (panels >= 1 << 16)
        out[todo[done]] = fine[done] + (fine[done] - coarse[done]) / 15.0
        todo = todo[~done]
        coarse = fine[~done]
    return out


def tridiag_solve(lower, diag, upper, rhs):
    # Thomas sweep on Python floats; the recurrence does not vectorize
    n = diag.shape[0]
    lo, di, up, r = lower.tolist(), diag.tolist(), upper.tolist(), rhs.tolist()
    cp = [0.0] * n
    dp = [0.0] * n
    cp[0] = up[0] / di[0] if n > 1 else 0.0
    dp[0] = r[0] / di[0]
    for i in range(1, n):
        denom = di[i] - lo[i - 1] * cp[i - 1]
        if i < n - 1:
            cp[i] = up[i] / denom
        dp[i] = (r[i] - lo[i - 1] * dp[i - 1]) / denom
    for i in range(n - 2, -1, -1):
        dp[i] -= cp[i] * dp[i + 1]
    return np.array(dp)


def spline_eval(knots, coeffs, t, order):
    t = np.clip(np.asarray(t, dtype=float), knots[0], knots[-1])
    i = np.clip(np.searchsorted(knots, t, side="right") - 1, 0, knots.shape[0] - 2)
    s = t - knots[i]
    c0, c1, c2, c3 = coeffs[i, 0], coeffs[i, 1], coeffs[i, 2], coeffs[i, 3]
    if order == 0:
        return c0 + s * (c1 + s * (c2 + s * c3))
    if order == 1:
        return c1 + s * (2.0 * c2 + 3.0 * s * c3)
    if order == 2:
        return 2.0 * c2 + 6.0 * s * c3
    raise ValueError("order must be 0, 1 or 2")


def closure_and_jacobian(phi, q):
    c, s = np.cos(phi), np.sin(phi)
    closure = np.array([q @ c, q @ s])
    jac = np.vstack((-q * s, q * c))
    return closure, jac


def polyline_objective(points):
    """Sum of squared turning angles at interior vertices, with gradient."""
    d = np.diff(points, axis=0)
    r2 = np.einsum("ij,ij->i", d, d)
    cross = d[:-1, 0] * d[1:, 1] - d[:-1, 1] * d[1:, 0]
    dot = np.einsum("ij,ij->i", d[:-1], d[1:])
    alpha = np.arctan2(cross, dot)
    perp = np.column_stack((-d[:, 1], d[:, 0])) / r2[:, None]
    # d alpha_j / d d_j = perp_j ; d alpha_j / d d_{j-1} = -perp_{j-1}
    g_d = np.zeros_like(d)
    g_d[1:] += 2.0 * alpha[:, None] * perp[1:]
    g_d[:-1] -= 2.0 * alpha[:, None] * perp[:-1]
    grad = np.zeros_like(points)
    grad[1:] += g_d
    grad[:-1] -= g_d
    return float(alpha @ alpha), grad
