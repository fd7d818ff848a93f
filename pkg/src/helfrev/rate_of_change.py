"""Linearised response of the cylinder branch minimum value.

Perturbing the load parameter on the cylinder branch changes the
profile at a rate rc that solves the clamped fourth order problem

    rc'''' + rc / alpha^4 = -2 / alpha   on (-1, 1),
    rc(+-1) = 0,  rc'(+-1) = 0,  rc even.

The solution is explicit in the fundamental system of f'''' = -4 f,

    C(y) = cosh y cos y,   S(y) = sinh y sin y,
    P(y) = sinh y cos y,   Q(y) = cosh y sin y,

at the scaled argument y = beta x with beta = 1 / (alpha sqrt 2):

    rc(x) = -2 alpha^3 + a C(beta x) + b S(beta x),
    a = (2 alpha^3 / d) [P(beta) + Q(beta)],
    b = -(2 alpha^3 / d) [P(beta) - Q(beta)],
    d = cosh(beta) sinh(beta) + cos(beta) sin(beta) > 0.

The hyperbolic factors in a, b and d overflow long before alpha
reaches interesting values, so the coefficients are formed from the
bounded ratios tc = cos(beta)/cosh(beta) and ts = sin(beta)/sinh(beta):
dividing numerator and d by cosh(beta) sinh(beta) turns the quotients
into (tc + ts)/(1 + tc ts) and -(tc - ts)/(1 + tc ts), whose
denominator stays within (0, 2] for every beta > 0.

The sign of rc' on (0, 1) matches the sign of

    sin(beta) cosh(beta) sinh(beta x) cos(beta x)
        - cos(beta) sinh(beta) cosh(beta x) sin(beta x),

which is single-signed precisely while beta stays at or below the
first root of tan y = tanh y past pi.  The rate profile is therefore
monotone on (0, 1) for alpha at or above alpha_crit and oscillates,
starting at the origin, below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCoefficients, OutOfDomain
from .roots import bisect

_OVERFLOW_ARGUMENT = 709.0


@dataclass(frozen=True)
class RateCoefficients:
    """Closed form data for the rate profile at one alpha.

    `offset` is the constant particular solution -2 alpha^3; `d` is the
    positive boundary denominator shared by `a` and `b`.
    """

    alpha: float
    beta: float
    a: float
    b: float
    d: float
    offset: float

    def as_dict(self) -> dict[str, float]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "a": self.a,
            "b": self.b,
            "d": self.d,
            "offset": self.offset,
        }


@dataclass(frozen=True)
class MonotonicityVerdict:
    """Sampled sign structure of the rate slope on (0, 1)."""

    alpha: float
    label: str
    sign_changes: tuple[float, ...]
    stable: bool
    samples_used: int

    def as_dict(self) -> dict[str, object]:
        return {
            "alpha": self.alpha,
            "label": self.label,
            "sign_changes": list(self.sign_changes),
            "stable": self.stable,
            "samples_used": self.samples_used,
        }


def rate_coefficients(alpha: float) -> RateCoefficients:
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise OutOfDomain(f"alpha must be positive and finite, got {alpha!r}")
    beta = 1.0 / (alpha * math.sqrt(2.0))
    if 2.0 * beta > _OVERFLOW_ARGUMENT:
        raise DegenerateCoefficients(
            f"alpha = {alpha!r} drives the hyperbolic factors past the "
            "floating point range")
    tc = math.cos(beta) / math.cosh(beta)
    ts = math.sin(beta) / math.sinh(beta)
    denom = 1.0 + tc * ts
    scale = 2.0 * alpha ** 3
    d = 0.5 * (math.sinh(2.0 * beta) + math.sin(2.0 * beta))
    return RateCoefficients(
        alpha=alpha,
        beta=beta,
        a=scale * (tc + ts) / denom,
        b=-scale * (tc - ts) / denom,
        d=d,
        offset=-scale,
    )


def fundamental_system(alpha: float, x: np.ndarray | float
                       ) -> tuple[np.ndarray, ...]:
    """(C, S, P, Q) of f'''' + f / alpha^4 = 0 at the argument beta x."""
    coeff = rate_coefficients(alpha)
    return _cs(coeff, np.asarray(x, dtype=float))


def _cs(coeff: RateCoefficients, x: np.ndarray) -> tuple[np.ndarray, ...]:
    y = coeff.beta * x
    ch, sh = np.cosh(y), np.sinh(y)
    co, si = np.cos(y), np.sin(y)
    return ch * co, sh * si, sh * co, ch * si


def rate_closed_form(alpha: float, x: np.ndarray | float
                     ) -> tuple[np.ndarray, ...]:
    """rc and its first four derivatives, all in closed form.

    Differentiation stays inside the span of C, S, P, Q:
        rc'   = beta   [ (a+b) P + (b-a) Q ]
        rc''  = 2 beta^2 ( b C - a S )
        rc''' = 2 beta^3 [ (b-a) P - (a+b) Q ]
        rc'''' = -4 beta^4 ( a C + b S )
    evaluated at beta x.
    """
    coeff = rate_coefficients(alpha)
    xa = np.asarray(x, dtype=float)
    c, s, p, q = _cs(coeff, xa)
    a, b, beta = coeff.a, coeff.b, coeff.beta
    rc = coeff.offset + a * c + b * s
    rc1 = beta * ((a + b) * p + (b - a) * q)
    rc2 = 2.0 * beta ** 2 * (b * c - a * s)
    rc3 = 2.0 * beta ** 3 * ((b - a) * p - (a + b) * q)
    rc4 = -4.0 * beta ** 4 * (a * c + b * s)
    return rc, rc1, rc2, rc3, rc4


def rate_profile(alpha: float, x: np.ndarray | float) -> np.ndarray:
    """The rate function rc on [-1, 1]; even, vanishing at the ends."""
    return rate_closed_form(alpha, x)[0]


def rate_derivative(alpha: float, x: np.ndarray | float) -> np.ndarray:
    """rc'; odd, vanishing at 0 and at +-1."""
    return rate_closed_form(alpha, x)[1]


def rate_fourth_derivative(alpha: float, x: np.ndarray | float) -> np.ndarray:
    """rc''''; proportional to the oscillatory part of rc itself."""
    return rate_closed_form(alpha, x)[4]


def bvp_residual(alpha: float, x: np.ndarray | None = None) -> float:
    """Sup norm of rc'''' + rc/alpha^4 + 2/alpha over a sample.

    The closed form satisfies the equation identically, so this only
    measures floating point cancellation; it grows mildly as alpha
    shrinks and the hyperbolic factors steepen.
    """
    if x is None:
        x = np.linspace(-1.0, 1.0, 2001)
    xa = np.asarray(x, dtype=float)
    rc, _, _, _, rc4 = rate_closed_form(alpha, xa)
    residual = rc4 + rc / alpha ** 4 + 2.0 / alpha
    return float(np.max(np.abs(residual)))


def boundary_values(alpha: float) -> dict[str, float]:
    """The clamped boundary quantities; all but the centre value vanish."""
    rc_one, rc1_one, _, _, _ = rate_closed_form(alpha, 1.0)
    rc_zero, rc1_zero, _, _, _ = rate_closed_form(alpha, 0.0)
    return {
        "value_at_one": float(rc_one),
        "slope_at_one": float(rc1_one),
        "slope_at_zero": float(rc1_zero),
        "value_at_zero": float(rc_zero),
    }


def boundary_determinant(beta: float) -> float:
    """Determinant of the clamped boundary system at rate beta.

    Rows are the values and beta-normalised slopes of C, S, P, Q
    (composed with beta x) at x = +-1.  The closed form

        -4 sinh^2(beta) cosh^2(beta) + 4 sin^2(beta) cos^2(beta)

    is strictly negative for every beta > 0, so the clamped problem is
    uniquely solvable at every rate.
    """
    if not (beta > 0.0 and math.isfinite(beta)):
        raise OutOfDomain(f"beta must be positive and finite, got {beta!r}")
    if 2.0 * beta > _OVERFLOW_ARGUMENT:
        raise DegenerateCoefficients(
            f"beta = {beta!r} overflows the hyperbolic determinant factor")
    sh, ch = math.sinh(beta), math.cosh(beta)
    si, co = math.sin(beta), math.cos(beta)
    return -4.0 * sh * sh * ch * ch + 4.0 * si * si * co * co


def _interior_samples(n_samples: int) -> np.ndarray:
    return np.linspace(0.0, 1.0, n_samples + 2)[1:-1]


def _sign_change_brackets(alpha: float, n_samples: int
                          ) -> list[tuple[float, float]]:
    """Sample intervals on (0, 1) where rc' changes sign."""
    x = _interior_samples(n_samples)
    d = rate_derivative(alpha, x)
    floor = 1e-13 * float(np.max(np.abs(d)))
    s = np.where(np.abs(d) <= floor, 0.0, np.sign(d))
    brackets: list[tuple[float, float]] = []
    last = 0.0
    last_x = 0.0
    for xi, si in zip(x, s):
        if si == 0.0:
            continue
        if last != 0.0 and si != last:
            brackets.append((last_x, float(xi)))
        last = si
        last_x = float(xi)
    return brackets


def monotonicity_verdict(alpha: float, n_samples: int = 5000
                         ) -> MonotonicityVerdict:
    """Classify the rate slope sign structure on (0, 1) by sampling.

    Monotone means rc' > 0 at every sample point; otherwise the located
    sign changes are attached.  The verdict is marked stable when
    doubling the sample count twice leaves both the label and the
    number of sign changes unchanged.
    """
    labels = []
    counts = []
    for k in range(3):
        n = n_samples * (2 ** k)
        positive = bool(np.all(rate_derivative(alpha, _interior_samples(n))
                               > 0.0))
        labels.append(positive)
        counts.append(len(_sign_change_brackets(alpha, n)))
    stable = labels[0] == labels[1] == labels[2] and \
        counts[0] == counts[1] == counts[2]

    locations: list[float] = []
    if not labels[-1]:
        for lo, hi in _sign_change_brackets(alpha, n_samples * 4):
            locations.append(bisect(
                lambda t: float(rate_derivative(alpha, t)), lo, hi,
                xtol=1e-13))
    return MonotonicityVerdict(
        alpha=alpha,
        label="Monotone" if labels[0] else "Oscillatory",
        sign_changes=tuple(locations),
        stable=stable,
        samples_used=n_samples * 4,
    )
