"""Independent residual checks for candidate minimisers.

The optimizer works on the piecewise cubic Hermite interpolant, whose
second derivative jumps at nodes, so pointwise Euler-Lagrange and
first-integral checks need a smoother representation.  The refit here
is a piecewise quintic through the nodal (u, u') data with second
derivatives chosen for C^3 continuity, an even-symmetry closure
u'''(0) = 0 at the centre and a C^4 closure at the outer end.  It uses
only nodal data and a different function space than the optimizer, so
agreement between the two is real evidence rather than bookkeeping.

Third and fourth derivatives of the refit are piecewise polynomials
with jumps at nodes; all sampling stays inside elements and skips a
band of elements next to x = 1 where any nodal fit is least reliable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import BadGrid, OutOfDomain
from .profiles import ProfileCurve


class QuinticRefit:
    """C^2 piecewise-quintic refit of a profile's nodal data.

    Elementwise coefficients are stored in the local variable
    t = (x - x_i) / h_i; evaluation handles the even mirror extension
    with the correct derivative parities.
    """

    def __init__(self, curve: ProfileCurve) -> None:
        nodes = curve.grid.nodes
        n = curve.grid.n_elements
        if n < 3:
            raise BadGrid("the quintic refit needs at least three elements")
        h = curve.grid.element_sizes
        u = curve.values
        d = curve.derivatives

        # Tridiagonal-plus-one system for the nodal second derivatives m:
        # C^3 continuity at interior nodes, u'''(0) = 0 at the centre
        # (evenness), C^4 continuity at the last interior node.
        size = n + 1
        lower2 = np.zeros(size)
        lower1 = np.zeros(size)
        diag = np.zeros(size)
        upper1 = np.zeros(size)
        rhs = np.zeros(size)

        h0 = h[0]
        diag[0] = -9.0 * h0 * h0
        upper1[1] = 3.0 * h0 * h0
        rhs[0] = 60.0 * u[0] + 36.0 * h0 * d[0] - 60.0 * u[1] + 24.0 * h0 * d[1]

        hL = h[:-1]
        hR = h[1:]
        i = np.arange(1, n)
        lower1[i - 1] = -3.0 / hL
        diag[i] = 9.0 / hL + 9.0 / hR
        upper1[i + 1] = -3.0 / hR
        q_right = (-60.0 * u[i] - 36.0 * hR * d[i]
                   + 60.0 * u[i + 1] - 24.0 * hR * d[i + 1]) / hR ** 3
        p_left = (-60.0 * u[i - 1] - 24.0 * hL * d[i - 1]
                  + 60.0 * u[i] - 36.0 * hL * d[i]) / hL ** 3
        rhs[i] = q_right - p_left

        hl, hr = h[n - 2], h[n - 1]
        lower2[n - 2] = -24.0 / (hl * hl)
        lower1[n - 1] = 36.0 / (hl * hl) - 36.0 / (hr * hr)
        diag[n] = 24.0 / (hr * hr)
        rhs[n] = ((360.0 * u[n - 1] + 192.0 * hr * d[n - 1]
                   - 360.0 * u[n] + 168.0 * hr * d[n]) / hr ** 4
                  - (-360.0 * u[n - 2] - 168.0 * hl * d[n - 2]
                     + 360.0 * u[n - 1] - 192.0 * hl * d[n - 1]) / hl ** 4)

        # Banded layout: ab[1 + i - j, j] holds A[i, j] for (l, u) = (2, 1).
        ab = np.zeros((4, size))

        def put(i: int, j: int, val: float) -> None:
            ab[1 + i - j, j] = val

        put(0, 0, diag[0])
        put(0, 1, upper1[1])
        for k in range(1, n):
            put(k, k - 1, lower1[k - 1])
            put(k, k, diag[k])
            put(k, k + 1, upper1[k + 1])
        put(n, n - 2, lower2[n - 2])
        put(n, n - 1, lower1[n - 1])
        put(n, n, diag[n])

        m = solve_banded((2, 1), ab, rhs)

        # Elementwise quintic coefficients in t.
        u0, u1 = u[:-1], u[1:]
        d0, d1 = d[:-1], d[1:]
        m0, m1 = m[:-1], m[1:]
        hd0, hd1 = h * d0, h * d1
        h2m0, h2m1 = h * h * m0, h * h * m1
        coeff = np.empty((n, 6))
        coeff[:, 0] = u0
        coeff[:, 1] = hd0
        coeff[:, 2] = 0.5 * h2m0
        coeff[:, 3] = (-10.0 * u0 - 6.0 * hd0 - 1.5 * h2m0
                       + 10.0 * u1 - 4.0 * hd1 + 0.5 * h2m1)
        coeff[:, 4] = (15.0 * u0 + 8.0 * hd0 + 1.5 * h2m0
                       - 15.0 * u1 + 7.0 * hd1 - h2m1)
        coeff[:, 5] = (-6.0 * u0 - 3.0 * hd0 - 0.5 * h2m0
                       + 6.0 * u1 - 3.0 * hd1 + 0.5 * h2m1)

        self.nodes = nodes
        self.sizes = h
        self.coeff = coeff
        self.second_derivatives = m

    def derivatives(self, x) -> tuple[np.ndarray, ...]:
        """(u, u', u'', u''', u'''') at x in [-1, 1], mirror extended."""
        x = np.asarray(x, dtype=float)
        if np.any(np.abs(x) > 1.0 + 1e-15):
            raise OutOfDomain("refit evaluation outside [-1, 1]")
        sign = np.where(x < 0.0, -1.0, 1.0)
        xm = np.minimum(np.abs(x), 1.0)
        idx = np.clip(np.searchsorted(self.nodes, xm, side="left") - 1,
                      0, len(self.sizes) - 1)
        h = self.sizes[idx]
        t = (xm - self.nodes[idx]) / h
        c = self.coeff[idx]
        powers = t[..., None] ** np.arange(6)
        u = np.sum(c * powers, axis=-1)
        out = [u]
        fac = np.arange(6, dtype=float)
        cc = c.copy()
        for der in range(1, 5):
            cc = cc[..., 1:] * fac[1:6 - der + 1]
            powers = t[..., None] ** np.arange(cc.shape[-1])
            val = np.sum(cc * powers, axis=-1) / h ** der
            out.append(val)
        u, du, ddu, dddu, ddddu = out
        return (u, du * sign, ddu, dddu * sign, ddddu)


def curvature_derivatives(u, p, q, r, w):
    """H, H', H'' from pointwise derivative data (u, u', u'', u''', u'''').

    H = (1/(u s) - u''/s^3) / 2 with s = sqrt(1 + u'^2); the primes are
    x-derivatives along the profile.  Closed forms, no differencing.
    """
    s2 = 1.0 + p * p
    s = np.sqrt(s2)
    s3 = s2 * s
    s5 = s2 * s3
    s7 = s2 * s5
    inv = 1.0 / (u * s)
    H = 0.5 * (inv - q / s3)
    A1 = -p / (u * u * s) - p * q / (u * s3)
    B1 = r / s3 - 3.0 * p * q * q / s5
    H1 = 0.5 * (A1 - B1)
    A2 = (-q / (u * u * s) + 2.0 * p * p / (u ** 3 * s)
          + 2.0 * p * p * q / (u * u * s3)
          - (q * q + p * r) / (u * s3)
          + 3.0 * p * p * q * q / (u * s5))
    B2 = (w / s3 - (9.0 * p * q * r + 3.0 * q ** 3) / s5
          + 15.0 * p * p * q ** 3 / s7)
    H2 = 0.5 * (A2 - B2)
    return H, H1, H2


def _sample_window(curve: ProfileCurve, n_samples: int,
                   boundary_skip_elements: int) -> np.ndarray:
    nodes = curve.grid.nodes
    skip = min(boundary_skip_elements, curve.grid.n_elements - 1)
    x_cut = nodes[len(nodes) - 1 - skip]
    return np.linspace(0.0, x_cut, n_samples)


def el_residual(curve: ProfileCurve, epsilon: float,
                n_samples: int = 2001,
                boundary_skip_elements: int = 2) -> float:
    """Sup-norm of the strong-form Euler-Lagrange residual.

        (1/(u s)) d/dx(u H'/s) + H (u''/s^3 + 1/(u s))^2 / 2 - 2 eps H

    evaluated on the quintic refit over an even sampling window that
    skips `boundary_skip_elements` elements next to x = 1.  Exact
    critical profiles (cylinders at their epsilon, catenaries at any
    epsilon) give residuals at the refit's round-off floor.
    """
    if epsilon < 0.0:
        raise OutOfDomain(f"epsilon must be nonnegative, got {epsilon!r}")
    refit = QuinticRefit(curve)
    x = _sample_window(curve, n_samples, boundary_skip_elements)
    u, p, q, r, w = refit.derivatives(x)
    s2 = 1.0 + p * p
    s = np.sqrt(s2)
    H, H1, H2 = curvature_derivatives(u, p, q, r, w)
    flux = (p * H1 + u * H2) / s - u * p * q * H1 / (s2 * s)
    residual = (flux / (u * s)
                + 0.5 * H * (q / (s2 * s) + 1.0 / (u * s)) ** 2
                - 2.0 * epsilon * H)
    return float(np.max(np.abs(residual)))


@dataclass(frozen=True)
class FirstIntegralReport:
    """Constancy diagnostics for the conserved combination M[u].

    `x` and `values` hold the dense samples the drift was taken over.
    """
    drift: float
    mean: float
    min_value: float
    max_value: float
    x_window: float
    x: np.ndarray
    values: np.ndarray


def first_integral(curve: ProfileCurve, epsilon: float,
                   n_samples: int = 2001,
                   boundary_skip_elements: int = 2) -> FirstIntegralReport:
    """Drift of M[u] = u u' H'/s^2 + u H^2/s - H/s^2 - eps u/s.

    M is constant along any critical profile: the cylinder at its
    epsilon carries M = -1/(4 alpha) - eps alpha, the catenary M =
    -eps c.  Drift is max - min over the sampling window, which skips
    the boundary band exactly as `el_residual` does.
    """
    if epsilon < 0.0:
        raise OutOfDomain(f"epsilon must be nonnegative, got {epsilon!r}")
    refit = QuinticRefit(curve)
    x = _sample_window(curve, n_samples, boundary_skip_elements)
    u, p, q, r, w = refit.derivatives(x)
    s2 = 1.0 + p * p
    s = np.sqrt(s2)
    H, H1, _ = curvature_derivatives(u, p, q, r, w)
    m_vals = (u * p * H1 / s2 + u * H * H / s - H / s2
              - epsilon * u / s)
    lo = float(np.min(m_vals))
    hi = float(np.max(m_vals))
    return FirstIntegralReport(drift=hi - lo,
                               mean=float(np.mean(m_vals)),
                               min_value=lo, max_value=hi,
                               x_window=float(x[-1]),
                               x=x, values=m_vals)
