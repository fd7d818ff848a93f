"""Bisection root finding.

Every transcendental equation in this package is solved by plain bisection
on an analytically certified bracket.  Bisection is derivative free and
unconditionally convergent on a sign change, which keeps the root finding
independent of any calculus performed elsewhere.
"""

from __future__ import annotations

from typing import Callable

from .errors import RootNotBracketed

DEFAULT_XTOL = 1e-14


def bisect(f: Callable[[float], float], lo: float, hi: float,
           xtol: float = DEFAULT_XTOL, max_iter: int = 200) -> float:
    """Return a root of f in [lo, hi] located by bisection.

    Parameters
    ----------
    f : callable
        Scalar function, continuous on [lo, hi].
    lo, hi : float
        Bracket endpoints with f(lo) and f(hi) of opposite sign.
    xtol : float
        Terminate once the bracket width falls below xtol.
    max_iter : int
        Hard cap on iterations; 200 halvings exhaust double precision.

    Raises
    ------
    RootNotBracketed
        If f(lo) and f(hi) do not have opposite signs.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise RootNotBracketed(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < xtol or mid == lo or mid == hi:
            return mid
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return 0.5 * (lo + hi)


def grow_upper_bracket(f: Callable[[float], float], lo: float,
                       factor: float = 2.0, max_grow: int = 200) -> float:
    """Return hi > lo with f(hi) of opposite sign to f(lo), growing geometrically."""
    flo = f(lo)
    hi = lo * factor if lo > 0 else lo + 1.0
    for _ in range(max_grow):
        if (f(hi) > 0.0) != (flo > 0.0) or f(hi) == 0.0:
            return hi
        hi *= factor
    raise RootNotBracketed(f"no sign change found above {lo!r}")


def shrink_lower_bracket(f: Callable[[float], float], hi: float,
                         factor: float = 10.0, max_shrink: int = 400) -> float:
    """Return lo < hi with f(lo) of opposite sign to f(hi), shrinking by 1/factor."""
    fhi = f(hi)
    lo = hi / factor
    for _ in range(max_shrink):
        if (f(lo) > 0.0) != (fhi > 0.0) or f(lo) == 0.0:
            return lo
        lo /= factor
    raise RootNotBracketed(f"no sign change found below {hi!r}")
