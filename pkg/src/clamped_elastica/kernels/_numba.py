"""Loop kernels compiled with numba; same contracts as ``_numpy``."""

import math

import numpy as np
from numba import njit

AGM_RTOL = 1e-15
AGM_MAXITER = 32
MAX_DEPTH = 48


@njit(cache=True)
def _agm_ladder(m):
    aa = np.empty(AGM_MAXITER + 1)
    cc = np.empty(AGM_MAXITER + 1)
    a = 1.0
    b = math.sqrt(1.0 - m)
    c = math.sqrt(m)
    aa[0] = a
    cc[0] = c
    n = 0
    for _ in range(AGM_MAXITER):
        if abs(c) <= AGM_RTOL * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        n += 1
        aa[n] = a
        cc[n] = c
    return aa, cc, n


@njit(cache=True)
def _amplitude(u, aa, cc, n):
    phi = (2.0**n) * aa[n] * u
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(cc[k] / aa[k] * math.sin(phi)))
    return phi


@njit(cache=True)
def agm_amplitude(u, m):
    aa, cc, n = _agm_ladder(m)
    phi = np.empty(u.shape[0])
    dn = np.empty(u.shape[0])
    for i in range(u.shape[0]):
        p = _amplitude(u[i], aa, cc, n)
        s = math.sin(p)
        phi[i] = p
        dn[i] = math.sqrt(1.0 - m * s * s)
    return phi, dn


@njit(cache=True)
def _curvature(family, kappa0, m, t0, t, aa, cc, n):
    s = kappa0 * (t - t0)
    if family == 0:
        return kappa0 * math.cos(_amplitude(s / (2.0 * math.sqrt(m)), aa, cc, n))
    return kappa0 / math.cosh(0.5 * s)


@njit(cache=True)
def adaptive_simpson_curvature(family, kappa0, m, t0, lo, hi, tol):
    if family == 0:
        aa, cc, n = _agm_ladder(m)
    else:
        aa, cc, n = _agm_ladder(0.0)
    out = np.empty(lo.shape[0])
    # explicit stack of (x0, x2, f0, f1, f2, whole, tol, depth)
    sx0 = np.empty(MAX_DEPTH + 2)
    sx2 = np.empty(MAX_DEPTH + 2)
    sf0 = np.empty(MAX_DEPTH + 2)
    sf1 = np.empty(MAX_DEPTH + 2)
    sf2 = np.empty(MAX_DEPTH + 2)
    sw = np.empty(MAX_DEPTH + 2)
    st = np.empty(MAX_DEPTH + 2)
    sd = np.empty(MAX_DEPTH + 2, dtype=np.int64)
    for i in range(lo.shape[0]):
        x0 = lo[i]
        x2 = hi[i]
        f0 = _curvature(family, kappa0, m, t0, x0, aa, cc, n)
        f2 = _curvature(family, kappa0, m, t0, x2, aa, cc, n)
        f1 = _curvature(family, kappa0, m, t0, 0.5 * (x0 + x2), aa, cc, n)
        top = 0
        sx0[0] = x0
        sx2[0] = x2
        sf0[0] = f0
        sf1[0] = f1
        sf2[0] = f2
        sw[0] = (x2 - x0) * (f0 + 4.0 * f1 + f2) / 6.0
        st[0] = tol
        sd[0] = 0
        total = 0.0
        while top >= 0:
            x0 = sx0[top]
            x2 = sx2[top]
            f0 = sf0[top]
            f1 = sf1[top]
            f2 = sf2[top]
            whole = sw[top]
            eps = st[top]
            depth = sd[top]
            top -= 1
            x1 = 0.5 * (x0 + x2)
            fl = _curvature(family, kappa0, m, t0, 0.5 * (x0 + x1), aa, cc, n)
            fr = _curvature(family, kappa0, m, t0, 0.5 * (x1 + x2), aa, cc, n)
            left = (x1 - x0) * (f0 + 4.0 * fl + f1) / 6.0
            right = (x2 - x1) * (f1 + 4.0 * fr + f2) / 6.0
            delta = left + right - whole
            if abs(delta) <= 15.0 * eps or depth >= MAX_DEPTH:
                total += left + right + delta / 15.0
            else:
                top += 1
                sx0[top] = x1
                sx2[top] = x2
                sf0[top] = f1
                sf1[top] = fr
                sf2[top] = f2
                sw[top] = right
                st[top] = 0.5 * eps
                sd[top] = depth + 1
                top += 1
                sx0[top] = x0
                sx2[top] = x1
                sf0[top] = f0
                sf1[top] = fl
                sf2[top] = f1
                sw[top] = left
                st[top] = 0.5 * eps
                sd[top] = depth + 1
        out[i] = total
    return out


@njit(cache=True)
def tridiag_solve(lower, diag, upper, rhs):
    n = diag.shape[0]
    cp = np.empty(n)
    dp = np.empty(n)
    cp[0] = upper[0] / diag[0] if n > 1 else 0.0
    dp[0] = rhs[0] / diag[0]
    for i in range(1, n):
        denom = diag[i] - lower[i - 1] * cp[i - 1]
        if i < n - 1:
            cp[i] = upper[i] / denom
        dp[i] = (rhs[i] - lower[i - 1] * dp[i - 1]) / denom
    x = np.empty(n)
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


@njit(cache=True)
def spline_eval(knots, coeffs, t, order):
    out = np.empty(t.shape[0])
    last = knots.shape[0] - 2
    for k in range(t.shape[0]):
        x = min(max(t[k], knots[0]), knots[-1])
        i = np.searchsorted(knots, x, side="right") - 1
        i = min(max(i, 0), last)
        s = x - knots[i]
        c0 = coeffs[i, 0]
        c1 = coeffs[i, 1]
        c2 = coeffs[i, 2]
        c3 = coeffs[i, 3]
        if order == 0:
            out[k] = c0 + s * (c1 + s * (c2 + s * c3))
        elif order == 1:
            out[k] = c1 + s * (2.0 * c2 + 3.0 * s * c3)
        else:
            out[k] = 2.0 * c2 + 6.0 * s * c3
    return out


@njit(cache=True)
def closure_and_jacobian(phi, q):
    closure = np.zeros(2)
    jac = np.empty((2, phi.shape[0]))
    for j in range(phi.shape[0]):
        c = math.cos(phi[j])
        s = math.sin(phi[j])
        closure[0] += q[j] * c
        closure[1] += q[j] * s
        jac[0, j] = -q[j] * s
        jac[1, j] = q[j] * c
    return closure, jac


@njit(cache=True)
def polyline_objective(points):
    npts = points.shape[0]
    grad = np.zeros((npts, 2))
    f = 0.0
    for j in range(1, npts - 1):
        ax = points[j, 0] - points[j - 1, 0]
        ay = points[j, 1] - points[j - 1, 1]
        bx = points[j + 1, 0] - points[j, 0]
        by = points[j + 1, 1] - points[j, 1]
        alpha = math.atan2(ax * by - ay * bx, ax * bx + ay * by)
        f += alpha * alpha
        ra = ax * ax + ay * ay
        rb = bx * bx + by * by
        # gradient wrt segment b = +perp(b)/|b|^2, wrt segment a = -perp(a)/|a|^2
        gbx = 2.0 * alpha * (-by / rb)
        gby = 2.0 * alpha * (bx / rb)
        gax = -2.0 * alpha * (-ay / ra)
        gay = -2.0 * alpha * (ax / ra)
        grad[j + 1, 0] += gbx
        grad[j + 1, 1] += gby
        grad[j, 0] -= gbx
        grad[j, 1] -= gby
        grad[j, 0] += gax
        grad[j, 1] += gay
        grad[j - 1, 0] -= gax
        grad[j - 1, 1] -= gay
    return f, grad
