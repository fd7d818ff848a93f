"""Oscillation analysis for A cosh cos - B sinh sin combinations.

Functions of the form

    h(x) = A cosh(ax) cos(ax) - B sinh(ax) sin(ax)

carry the oscillatory behaviour of the linearised cylinder problem.
The toolkit rewrites h and h' in envelope and phase form,

    h(x)  = E(x) cos(x + phi(x)),   E = sqrt(A^2 cosh^2 + B^2 sinh^2),
    h'(x) = F(x) cos(x + psi(x)),   F = sqrt((A+B)^2 cosh^2
                                             + (A-B)^2 sinh^2),

at unit rate, where the phases follow the atan2 of the decomposition
(phi(0) = 0 and psi(0) in {-pi/2, 0, pi/2} when A > 0).  Both phase
derivatives collapse to exact rational expressions,

    phi'(x) = A B / E(x)^2,
    psi'(x) = (B - A)(A + B) / F(x)^2,

which drive three classical facts mirrored here numerically: local
extrema of |h| strictly grow along the positive axis, the special
coefficient family tied to the boundary data attains its maximum at
the endpoint, and a sign inequality for the mixed product holds
exactly up to the first root of tan y = tanh y beyond pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateCoefficients, OutOfDomain, PhaseUndefined,
                     PoleAtMultipleOfPi)
from .roots import bisect

_POLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class OscillationReport:
    """Extremum structure of one coefficient triple on [0, x_max].

    `extrema` lists (x, h(x)) pairs in increasing x including the
    critical point at the origin; `abs_monotone` records whether |h|
    strictly increases along them.  `phases` samples (x, phi, psi) at
    the scaled argument when the phase decomposition applies, and
    `y_star` carries the phase slowdown crossing of tanh for B/A < -1.
    """

    A: float
    B: float
    a: float
    x_max: float
    extrema: tuple[tuple[float, float], ...]
    abs_monotone: bool
    phases: tuple[tuple[float, float, float], ...] | None
    y_star: float | None

    def as_dict(self) -> dict[str, object]:
        return {
            "A": self.A,
            "B": self.B,
            "a": self.a,
            "x_max": self.x_max,
            "extrema": [list(pair) for pair in self.extrema],
            "abs_monotone": self.abs_monotone,
            "phases": None if self.phases is None
            else [list(triple) for triple in self.phases],
            "y_star": self.y_star,
        }


def _check_coefficients(A: float, B: float, a: float) -> None:
    if A == 0.0 and B == 0.0:
        raise DegenerateCoefficients("A and B must not vanish together")
    if not (a > 0.0 and math.isfinite(a)):
        raise OutOfDomain(f"rate a must be positive and finite, got {a!r}")


def oscillation_h(A: float, B: float, a: float, x: np.ndarray | float
                  ) -> tuple[np.ndarray, ...]:
    """h, h' and h'' of the cosh cos combination at rate a.

        h   = A cosh(ax) cos(ax) - B sinh(ax) sin(ax)
        h'  = a [ (A-B) sinh(ax) cos(ax) - (A+B) cosh(ax) sin(ax) ]
        h'' = -2 a^2 [ A sinh(ax) sin(ax) + B cosh(ax) cos(ax) ]
    """
    _check_coefficients(A, B, a)
    y = a * np.asarray(x, dtype=float)
    ch, sh = np.cosh(y), np.sinh(y)
    co, si = np.cos(y), np.sin(y)
    h = A * ch * co - B * sh * si
    h1 = a * ((A - B) * sh * co - (A + B) * ch * si)
    h2 = -2.0 * a * a * (A * sh * si + B * ch * co)
    return h, h1, h2


def phase_functions(A: float, B: float, a: float, x: np.ndarray | float
                    ) -> tuple[np.ndarray, ...]:
    """Envelopes and phases (E, F, phi, phi', psi, psi') at y = a x.

    All six quantities are functions of the scaled argument y, and the
    derivatives are taken with respect to y, so the reconstruction
    reads h(x) = E cos(y + phi) and h'(x) = a F cos(y + psi).  The phi
    branch needs A != 0; when A + B = 0 the psi derivative vanishes
    identically and is returned as exactly zero.
    """
    _check_coefficients(A, B, a)
    if A == 0.0:
        raise PhaseUndefined("phi needs A != 0; the envelope vanishes at 0")
    y = a * np.asarray(x, dtype=float)
    ch, sh = np.cosh(y), np.sinh(y)
    e2 = A * A * ch * ch + B * B * sh * sh
    f2 = (A + B) ** 2 * ch * ch + (A - B) ** 2 * sh * sh
    phi = np.arctan2(B * sh, A * ch)
    psi = np.arctan2((A + B) * ch, (A - B) * sh)
    dphi = A * B / e2
    if A + B == 0.0:
        dpsi = np.zeros_like(f2)
    else:
        dpsi = (B - A) * (A + B) / f2
    return np.sqrt(e2), np.sqrt(f2), phi, dphi, psi, dpsi


def oscillation_extrema(A: float, B: float, a: float, x_max: float,
                        phase_samples: int = 101) -> OscillationReport:
    """Locate every critical point of h in [0, x_max] and classify.

    The scan step pi/(8a) is well under the minimal spacing of zeros of
    h', so a sign scan with bisection refinement cannot skip roots; the
    origin is always critical by evenness.  `abs_monotone` reports
    whether |h| strictly increases along the extrema, which the phase
    analysis predicts unconditionally.
    """
    _check_coefficients(A, B, a)
    if not (x_max > 0.0 and math.isfinite(x_max)):
        raise OutOfDomain(f"x_max must be positive and finite, got {x_max!r}")

    rate_bound = 1.0
    if A + B != 0.0:
        rate_bound += min(abs((B - A) / (A + B)), 15.0)
    step = math.pi / (8.0 * a * rate_bound)
    n_steps = int(math.ceil(x_max / step)) + 1
    grid = np.linspace(0.0, x_max, max(n_steps, 9))
    _, h1, _ = oscillation_h(A, B, a, grid)

    roots = [0.0]
    for i in range(1, grid.size - 1):
        lo, hi = float(grid[i]), float(grid[i + 1])
        flo, fhi = float(h1[i]), float(h1[i + 1])
        if flo == 0.0:
            roots.append(lo)
        elif flo * fhi < 0.0:
            roots.append(bisect(
                lambda t: float(oscillation_h(A, B, a, t)[1]), lo, hi,
                xtol=1e-13))
    if float(h1[-1]) == 0.0:
        roots.append(float(grid[-1]))

    xs = np.asarray(sorted(set(roots)))
    hs = oscillation_h(A, B, a, xs)[0]
    extrema = tuple((float(xi), float(hi)) for xi, hi in zip(xs, hs))
    magnitudes = np.abs(hs)
    abs_monotone = bool(np.all(np.diff(magnitudes) > 0.0)) \
        if magnitudes.size > 1 else True

    phases = None
    if A != 0.0:
        px = np.linspace(0.0, x_max, phase_samples)
        _, _, phi, _, psi, _ = phase_functions(A, B, a, px)
        phases = tuple((float(t), float(p), float(q))
                       for t, p, q in zip(px, phi, psi))

    y_star = None
    if A != 0.0:
        ratio = B / A
        if ratio != 0.0:
            y_star = phase_slowdown_crossing(ratio)

    return OscillationReport(A=A, B=B, a=a, x_max=x_max, extrema=extrema,
                             abs_monotone=abs_monotone, phases=phases,
                             y_star=y_star)


def endpoint_dominant_family(a: float) -> tuple[float, float]:
    """The coefficient pair whose combination peaks at the endpoint.

    With A = sinh a cos a + cosh a sin a and B = sinh a cos a -
    cosh a sin a, the combination satisfies
    h(1) = sinh a cosh a + sin a cos a and dominates h on [0, 1).
    """
    if not (a > 0.0 and math.isfinite(a)):
        raise OutOfDomain(f"rate a must be positive and finite, got {a!r}")
    sc = math.sinh(a) * math.cos(a)
    cs = math.cosh(a) * math.sin(a)
    return sc + cs, sc - cs


def tanh_tan_ratio(x: float) -> float:
    """tanh(x)/tan(x); strictly decreasing between consecutive poles."""
    if not math.isfinite(x):
        raise OutOfDomain(f"x must be finite, got {x!r}")
    nearest = round(x / math.pi)
    if abs(x - nearest * math.pi) <= _POLE_TOLERANCE * max(1.0, abs(x)):
        raise PoleAtMultipleOfPi(f"tan vanishes at {x!r}")
    return math.tanh(x) / math.tan(x)


def sign_inequality(a: float, x: float) -> bool:
    """Whether the mixed product inequality holds at one point.

    Evaluates cosh(a) sin(a) sinh(x) cos(x) - sinh(a) cos(a) cosh(x)
    sin(x) > 0 for 0 < x < a.  The inequality holds throughout (0, a)
    exactly when a does not exceed the first root of tan y = tanh y
    beyond pi.
    """
    if not (a > 0.0 and math.isfinite(a)):
        raise OutOfDomain(f"rate a must be positive and finite, got {a!r}")
    if not 0.0 < x < a:
        raise OutOfDomain(f"x must lie in (0, {a!r}), got {x!r}")
    value = (math.cosh(a) * math.sin(a) * math.sinh(x) * math.cos(x)
             - math.sinh(a) * math.cos(a) * math.cosh(x) * math.sin(x))
    return value > 0.0


def phase_slowdown_crossing(K: float) -> float | None:
    """Where the phase advance 1 + K eta(y) changes sign, if anywhere.

    eta(y) = 1 - (1 + K^2) y^2 / (1 + K^2 y^2) on [0, 1) is positive
    and strictly decreasing.  For K < -1 the advance vanishes at
    y_star = sqrt((1 + 1/K) / (1 - K)), inside (0, 1/sqrt 2), being
    negative before and positive after; for K >= -1 it never does.
    """
    if K == 0.0 or not math.isfinite(K):
        raise OutOfDomain(f"K must be nonzero and finite, got {K!r}")
    if K >= -1.0:
        return None
    return math.sqrt((1.0 + 1.0 / K) / (1.0 - K))


def phase_advance(K: float, y: float) -> float:
    """1 + K eta(y) for y in [0, 1); the sampled sign-pattern witness."""
    if K == 0.0 or not math.isfinite(K):
        raise OutOfDomain(f"K must be nonzero and finite, got {K!r}")
    if not 0.0 <= y < 1.0:
        raise OutOfDomain(f"y must lie in [0, 1), got {y!r}")
    eta = 1.0 - (1.0 + K * K) * y * y / (1.0 + K * K * y * y)
    return 1.0 + K * eta
