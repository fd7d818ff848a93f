"""Catenaries, the Goldschmidt discontinuous competitor, and the special
constants that organise the area-minimisation picture.

Everything here is closed form plus bisection; no discretised profile is
involved.  The family w_c(x) = c cosh(x / c) spans the boundary radius
alpha = c cosh(1 / c), which attains its minimum alpha0 at c0, so for
alpha > alpha0 there are exactly two catenary parameters c2 < c0 < c1.
Lateral area of a catenary and the disk pair area of the Goldschmidt
competitor close the classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import NoSolution, OutOfDomain
from .roots import bisect, shrink_lower_bracket

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ConstantsTable:
    """Solver-wide special constants with root-finding residuals.

    c0         root of c = tanh(1 / c); the catenary parameter of the
               critical boundary radius.
    alpha0     c0 cosh(1 / c0); smallest boundary radius spanned by
               catenaries.
    cm         root of 2 / c = 1 + exp(-2 / c); the parameter at which a
               catenary's lateral area ties the Goldschmidt area.
    alpha_m    cm cosh(1 / cm); boundary radius of the area tie.
    a_c        smallest positive root of tan(x) = tanh(x), sought in
               (pi, 3 pi / 2).
    alpha_crit 1 / (a_c sqrt(2)); threshold radius separating monotone
               from oscillatory branch rates.
    """
    c0: float
    alpha0: float
    cm: float
    alpha_m: float
    a_c: float
    alpha_crit: float
    residual_c0: float
    residual_cm: float
    residual_a_c: float

    def as_dict(self) -> dict[str, float]:
        return {
            "c0": self.c0,
            "alpha0": self.alpha0,
            "cm": self.cm,
            "alpha_m": self.alpha_m,
            "a_c": self.a_c,
            "alpha_crit": self.alpha_crit,
            "residual_c0": self.residual_c0,
            "residual_cm": self.residual_cm,
            "residual_a_c": self.residual_a_c,
        }


@lru_cache(maxsize=None)
def compute_constants(xtol: float = 1e-14) -> ConstantsTable:
    """Compute the constants table once; cached and shared read-only."""
    c0 = bisect(lambda c: c - math.tanh(1.0 / c), 0.5, 1.5, xtol=xtol)
    alpha0 = c0 * math.cosh(1.0 / c0)

    # Substituting t = 2 / c turns the tie equation into t = 1 + exp(-t),
    # monotone in t with a sign change on (1, 2).
    t = bisect(lambda t: t - 1.0 - math.exp(-t), 1.0, 2.0, xtol=xtol)
    cm = 2.0 / t
    alpha_m = cm * math.cosh(1.0 / cm)

    # tan - tanh is continuous on (pi, 3 pi / 2): tan rises from 0 to
    # +inf while tanh stays below 1, so the bracket is certified.
    a_c = bisect(lambda x: math.tan(x) - math.tanh(x),
                 math.pi + 1e-12, 1.5 * math.pi - 1e-12, xtol=xtol)
    alpha_crit = 1.0 / (a_c * math.sqrt(2.0))

    return ConstantsTable(
        c0=c0, alpha0=alpha0, cm=cm, alpha_m=alpha_m, a_c=a_c,
        alpha_crit=alpha_crit,
        residual_c0=abs(c0 - math.tanh(1.0 / c0)),
        residual_cm=abs(2.0 / cm - 1.0 - math.exp(-2.0 / cm)),
        residual_a_c=abs(math.tan(a_c) - math.tanh(a_c)),
    )


def alpha_of_c(c: float) -> float:
    """Boundary radius spanned by the catenary with parameter c."""
    if c <= 0.0:
        raise OutOfDomain("catenary parameter must be positive")
    return c * math.cosh(1.0 / c)


def alpha_prime_of_c(c: float) -> float:
    """d alpha / d c = cosh(1 / c) - (1 / c) sinh(1 / c)."""
    if c <= 0.0:
        raise OutOfDomain("catenary parameter must be positive")
    return math.cosh(1.0 / c) - math.sinh(1.0 / c) / c


def catenary_area(c: float) -> float:
    """Lateral area of the catenary surface: 2 pi c + pi c^2 sinh(2 / c)."""
    if c <= 0.0:
        raise OutOfDomain("catenary parameter must be positive")
    return _TWO_PI * c + math.pi * c * c * math.sinh(2.0 / c)


def goldschmidt_area(alpha: float) -> float:
    """Area of the two boundary disks, 2 pi alpha^2."""
    if alpha <= 0.0:
        raise OutOfDomain("alpha must be positive")
    return _TWO_PI * alpha * alpha


def g_function(c: float) -> float:
    """Scaled area gap g(c) = c - c^2/2 - (c^2/2) exp(-2/c).

    2 pi g(c) is the catenary area minus the Goldschmidt area at the
    boundary radius alpha(c); g changes sign exactly at cm.
    """
    if c <= 0.0:
        raise OutOfDomain("catenary parameter must be positive")
    e = math.exp(-2.0 / c)
    return c - 0.5 * c * c - 0.5 * c * c * e


def g_prime(c: float) -> float:
    """g'(c) = 1 - c - c exp(-2/c) - exp(-2/c)."""
    e = math.exp(-2.0 / c)
    return 1.0 - c - c * e - e


@dataclass(frozen=True)
class CatenaryBranch:
    """The two catenary parameters through boundary radius alpha.

    c1 is the flat branch (c1 >= c0), c2 the deep one (c2 <= c0); their
    lateral areas satisfy area1 <= area2 with equality only in the
    degenerate case alpha = alpha0.  eps_hat = 1 / (4 c1^2) marks where
    the flat catenary becomes the relevant area competitor for the full
    energy.
    """
    alpha: float
    c1: float
    c2: float
    area1: float
    area2: float
    eps_hat: float


def solve_catenary_branches(alpha: float,
                            table: ConstantsTable | None = None
                            ) -> CatenaryBranch:
    """Solve c cosh(1 / c) = alpha on both sides of c0.

    Raises NoSolution for alpha below alpha0, where no catenary spans
    the boundary circles.
    """
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise OutOfDomain(f"alpha must be positive and finite, got {alpha!r}")
    if table is None:
        table = compute_constants()
    if alpha < table.alpha0:
        raise NoSolution(
            f"no catenary spans alpha={alpha!r} < alpha0={table.alpha0!r}")
    if alpha == table.alpha0:
        c1 = c2 = table.c0
    else:
        f = lambda c: alpha_of_c(c) - alpha
        hi = max(2.0 * alpha, table.c0 + 1.0)
        c1 = bisect(f, table.c0, hi)
        lo = shrink_lower_bracket(f, table.c0)
        c2 = bisect(f, lo, table.c0)
    return CatenaryBranch(
        alpha=alpha, c1=c1, c2=c2,
        area1=catenary_area(c1), area2=catenary_area(c2),
        eps_hat=1.0 / (4.0 * c1 * c1))


def classify_area_minimiser(alpha: float,
                            table: ConstantsTable | None = None) -> str:
    """Least-area competitor among catenaries and the Goldschmidt pair.

    Returns "Catenary" for alpha > alpha_m, "Goldschmidt" for
    alpha < alpha_m and "Both" at the tie.
    """
    if alpha <= 0.0:
        raise OutOfDomain("alpha must be positive")
    if table is None:
        table = compute_constants()
    if abs(alpha - table.alpha_m) <= 1e-12 * table.alpha_m:
        return "Both"
    return "Catenary" if alpha > table.alpha_m else "Goldschmidt"


def reflected_branch_gaps(delta: float,
                          table: ConstantsTable | None = None
                          ) -> dict[str, float]:
    """Gaps alpha(c0 - delta) - alpha(c0 + delta) and g(c0 - delta) - g(c0 + delta).

    Both gaps are strictly positive for 0 < delta < c0: the deep branch
    reaches its boundary radius with the larger area.  Returned as a
    dict so callers can report or assert positivity.
    """
    if table is None:
        table = compute_constants()
    if not 0.0 < delta < table.c0:
        raise OutOfDomain(f"delta must lie in (0, c0), got {delta!r}")
    lo, hi = table.c0 - delta, table.c0 + delta
    return {
        "alpha_gap": alpha_of_c(lo) - alpha_of_c(hi),
        "g_gap": g_function(lo) - g_function(hi),
    }
