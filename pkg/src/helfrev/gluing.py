"""Energy-non-increasing surgeries toward the flat catenary.

Two rearrangements apply in the regime alpha >= alpha_m, eps >=
1 / (4 c1^2), where the flat catenary v(x) = c1 cosh(x / c1) is the
favourable area competitor:

* `glue_catenary` replaces the centre piece of a profile whose slope
  somewhere reaches the catenary's by an arc of a slightly larger
  catenary, tangent from above, leaving a profile with u' < v' on
  (0, 1].
* `insert_cylinder` removes intervals of negative slope by splicing in
  a cylindrical piece at the local minimum level and translating the
  centre down, leaving a profile with u' >= 0.

Both return their input unchanged when there is nothing to repair, and
both verify the energy comparison numerically, falling back to the
input if discretisation noise ever reverses it.

Surgery points rarely sit on grid nodes, so the output lives on the
input grid with the surgery points inserted as extra nodes.  Cubic
re-interpolation at inserted nodes is exact for the retained pieces, so
only the replaced pieces change the energy.
"""

from __future__ import annotations

import math

import numpy as np

from . import catenoids
from .energy import _energy_from_arrays
from .errors import OutOfDomain, RootNotBracketed
from .profiles import Grid, ProfileCurve, build_profile
from .roots import bisect

_SNAP_FRACTION = 0.05


def _require_regime(curve: ProfileCurve, epsilon: float
                    ) -> catenoids.CatenaryBranch:
    table = catenoids.compute_constants()
    if curve.alpha < table.alpha_m:
        raise OutOfDomain(
            f"surgery needs alpha >= alpha_m = {table.alpha_m!r}, "
            f"got {curve.alpha!r}")
    branch = catenoids.solve_catenary_branches(curve.alpha, table)
    if epsilon < branch.eps_hat:
        raise OutOfDomain(
            f"surgery needs epsilon >= {branch.eps_hat!r}, got {epsilon!r}")
    if not curve.is_admissible:
        raise OutOfDomain("surgery applies to clamped symmetric profiles")
    return branch


def _energy(curve: ProfileCurve, epsilon: float) -> float:
    return _energy_from_arrays(curve.grid, curve.values, curve.derivatives,
                               epsilon)


def _dense_x(grid: Grid, per_element: int = 8) -> np.ndarray:
    """Nodes plus evenly spaced interior points, increasing on [0, 1]."""
    pieces = [grid.nodes]
    for i in range(grid.n_elements):
        a, b = grid.nodes[i], grid.nodes[i + 1]
        pieces.append(np.linspace(a, b, per_element + 2)[1:-1])
    return np.unique(np.concatenate(pieces))


def _insert_node(nodes: np.ndarray, x_new: float) -> tuple[np.ndarray, float]:
    """Insert x_new into the node list, snapping to a close neighbour.

    Snapping avoids near-degenerate elements whose Hermite basis would
    amplify round-off.  Returns (new nodes, the possibly snapped x).
    """
    j = np.searchsorted(nodes, x_new)
    left = nodes[j - 1] if j > 0 else nodes[0]
    right = nodes[j] if j < nodes.size else nodes[-1]
    h_local = right - left
    if j > 0 and x_new - left < _SNAP_FRACTION * h_local:
        return nodes, left
    if j < nodes.size and right - x_new < _SNAP_FRACTION * h_local:
        return nodes, right
    return np.insert(nodes, j, x_new), x_new


def _finish(curve: ProfileCurve, candidate: ProfileCurve, epsilon: float
            ) -> ProfileCurve:
    """Return the candidate unless it raised the energy, then the input."""
    e_in = _energy(curve, epsilon)
    e_out = _energy(candidate, epsilon)
    if e_out <= e_in * (1.0 + 1e-12) + 1e-12:
        return candidate
    return curve


def glue_catenary(curve: ProfileCurve, epsilon: float) -> ProfileCurve:
    """Replace the centre by a tangent catenary arc where slopes allow.

    Scanning from x = 1, let x0 be the last point where u' reaches the
    flat catenary slope sinh(x / c1); if there is none the profile
    already satisfies u' < v' on (0, 1] and is returned unchanged.
    Otherwise the smallest catenary parameter c >= c1 with
    c cosh(x / c) > u on [x0, 1] gives an arc tangent to u at some
    x1 in (x0, 1), and u is replaced on (-x1, x1) by that arc.  The
    result has u' < v' on (0, 1] and no larger energy.
    """
    branch = _require_regime(curve, epsilon)
    c1 = branch.c1

    x_dense = _dense_x(curve.grid)
    u_dense, du_dense, _ = curve.evaluate(x_dense)
    slope_gap = du_dense - np.sinh(x_dense / c1)

    # Last slope contact scanning down from x = 1: u'(1) = 0 keeps the
    # gap negative at the boundary, and both slopes vanish at x = 0 by
    # evenness, so the origin never counts as a contact.
    slope_gap[0] = -1.0
    contact = np.nonzero(slope_gap[:-1] >= 0.0)[0]
    if contact.size == 0:
        return curve
    k = contact[-1]
    if slope_gap[k] == 0.0:
        x0 = float(x_dense[k])
    else:
        gap = lambda x: float(curve.evaluate(np.asarray([x]))[1][0]
                              - math.sinh(x / c1))
        x0 = bisect(gap, float(x_dense[k]), float(x_dense[k + 1]), xtol=1e-13)

    # Smallest covering catenary parameter: w_c grows pointwise in c on
    # [0, 1] above c0, so the covering predicate is monotone.
    window = x_dense >= x0 - 1e-14
    xs = x_dense[window]
    us = u_dense[window]

    def covers(c: float) -> bool:
        return bool(np.all(c * np.cosh(xs / c) > us))

    lo, hi = c1, 2.0 * c1
    grow = 0
    while not covers(hi):
        hi *= 2.0
        grow += 1
        if grow > 200:
            raise OutOfDomain("no covering catenary found")
    if covers(lo):
        hi = lo
    else:
        while hi - lo > 1e-12 * hi:
            mid = 0.5 * (lo + hi)
            if covers(mid):
                hi = mid
            else:
                lo = mid
    c_hat = hi

    # Tangency: minimiser of w - u over the window, refined on the slope
    # difference.
    diff = c_hat * np.cosh(xs / c_hat) - us
    j = int(np.argmin(diff))
    lo_x = float(xs[max(j - 1, 0)])
    hi_x = float(xs[min(j + 1, xs.size - 1)])

    def slope_diff(x: float) -> float:
        return float(math.sinh(x / c_hat)
                     - curve.evaluate(np.asarray([x]))[1][0])

    try:
        x1 = bisect(slope_diff, lo_x, hi_x, xtol=1e-13)
    except Exception:
        x1 = float(xs[j])
    x1 = min(max(x1, x0), 1.0 - 1e-12)

    nodes, x1 = _insert_node(curve.grid.nodes, x1)
    if x1 <= 0.0:
        return curve
    grid = Grid(nodes, curve.grid.quadrature_order)
    values, derivs, _ = curve.evaluate(grid.nodes)
    inner = grid.nodes <= x1
    values[inner] = c_hat * np.cosh(grid.nodes[inner] / c_hat)
    derivs[inner] = np.sinh(grid.nodes[inner] / c_hat)
    candidate = build_profile(curve.alpha, grid, values, derivs)
    return _finish(curve, candidate, epsilon)


def _rightmost_negative_interval(curve: ProfileCurve
                                 ) -> tuple[float, float] | None:
    """The maximal interval (a, b) of negative slope closest to x = 1."""
    x_dense = _dense_x(curve.grid)
    _, du, _ = curve.evaluate(x_dense)
    # the threshold sits above descent-convergence noise so rounding
    # wiggles never trigger a repair
    thr = -1e-8 * max(1.0, float(np.max(np.abs(du))))
    negative = np.nonzero(du < thr)[0]
    if negative.size == 0:
        return None
    j = negative[-1]

    def slope(x: float) -> float:
        return float(curve.evaluate(np.asarray([x]))[1][0])

    if j + 1 >= x_dense.size:
        b = 1.0
    else:
        try:
            b = bisect(slope, float(x_dense[j]), float(x_dense[j + 1]),
                       xtol=1e-13)
        except RootNotBracketed:
            b = float(x_dense[j + 1])

    i = j
    while i > 0 and du[i - 1] < thr:
        i -= 1
    if i == 0:
        a = 0.0
    elif du[i - 1] <= 0.0:
        a = float(x_dense[i - 1])
    else:
        try:
            a = bisect(slope, float(x_dense[i - 1]), float(x_dense[i]),
                       xtol=1e-13)
        except RootNotBracketed:
            a = float(x_dense[i - 1])
    return a, b


def insert_cylinder(curve: ProfileCurve, epsilon: float) -> ProfileCurve:
    """Remove negative-slope intervals by cylindrical splicing.

    For the rightmost maximal interval (a, b) with u' < 0, the repaired
    profile keeps u on [b, 1], holds the constant u(b) on (a, b) and
    translates the centre piece down by u(a) - u(b).  Junction slopes
    vanish, so the result stays C^1; repeating removes every negative
    interval.  Requires the slope ceiling u' < sinh(x / c1) on (0, 1],
    which guarantees the result stays above the flat catenary.  Returns
    a monotone profile with no larger energy; monotone inputs return
    unchanged.
    """
    branch = _require_regime(curve, epsilon)
    c1 = branch.c1

    x_check = np.linspace(0.0, 1.0, 1025)[1:]
    _, du_check, _ = curve.evaluate(x_check)
    ceiling = np.sinh(x_check / c1)
    if np.any(du_check - ceiling > 1e-6):
        raise OutOfDomain("input violates the catenary slope ceiling")

    work = curve
    changed = False
    for _ in range(4 * curve.grid.n_elements + 8):
        interval = _rightmost_negative_interval(work)
        if interval is None:
            break
        a, b = interval

        nodes = work.grid.nodes
        nodes, b = _insert_node(nodes, b)
        if a > 0.0:
            nodes, a = _insert_node(nodes, a)
        else:
            a = 0.0
        if b <= a:
            break
        grid = Grid(nodes, work.grid.quadrature_order)
        values, derivs, _ = work.evaluate(grid.nodes)
        u_a = float(work.evaluate(np.asarray([a]))[0][0])
        u_b = float(work.evaluate(np.asarray([b]))[0][0])
        drop = u_a - u_b

        centre = grid.nodes <= a
        middle = (grid.nodes > a) & (grid.nodes <= b)
        values[centre] -= drop
        values[middle] = u_b
        derivs[middle] = 0.0
        ja = int(np.searchsorted(grid.nodes, a))
        if grid.nodes[ja] == a:
            derivs[ja] = 0.0
        work = build_profile(work.alpha, grid, values, derivs)
        changed = True

    if not changed:
        return curve
    return _finish(curve, work, epsilon)
