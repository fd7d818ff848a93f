"""Area, Willmore and total bending energies of even profiles.

The bending energy of a profile u at area weight epsilon is

    E_eps(u) = W(u) + eps * A(u)

with A = 2 pi Int u sqrt(1 + u'^2) dx and W = (pi / 2) Int (2H)^2 u
sqrt(1 + u'^2) dx over [-1, 1].  Both are evaluated by per-element
Gauss quadrature of the Hermite interpolant, doubled over the mirror
symmetry, and the discrete gradient is the exact derivative of that
quadrature sum with respect to the free nodal degrees of freedom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import catenoids
from .errors import NonPositiveProfile, OutOfDomain
from .profiles import (Grid, ProfileCurve, build_profile,
                       subinterval_quadrature)
from .roots import bisect

_PI = math.pi
_FOUR_PI_SQ = 4.0 * math.pi ** 2


# -- low-level quadrature kernels (shared with the solver) -------------

def _quad_fields(grid: Grid, values: np.ndarray, derivs: np.ndarray):
    """(u, u', u'') at every quadrature point, shape (n_elements, order)."""
    dof = np.stack([values[:-1], derivs[:-1], values[1:], derivs[1:]], axis=1)
    u = np.einsum("eqj,ej->eq", grid.basis0, dof)
    p = np.einsum("eqj,ej->eq", grid.basis1, dof)
    q = np.einsum("eqj,ej->eq", grid.basis2, dof)
    return u, p, q


def _energy_from_arrays(grid: Grid, values: np.ndarray, derivs: np.ndarray,
                        epsilon: float, floor: float = 0.0) -> float:
    """Total energy, or +inf if the interpolant touches the floor.

    The +inf convention lets line searches reject infeasible steps
    without exception plumbing.
    """
    u, p, q = _quad_fields(grid, values, derivs)
    if np.min(u) <= floor:
        return math.inf
    s2 = 1.0 + p * p
    s = np.sqrt(s2)
    g = 1.0 / (u * s) - q / (s2 * s)
    integrand = 0.5 * _PI * g * g * u * s + epsilon * 2.0 * _PI * u * s
    total = 2.0 * float(np.sum(grid.quad_w * integrand))
    return total if math.isfinite(total) else math.inf


def _gradient_from_arrays(grid: Grid, values: np.ndarray, derivs: np.ndarray,
                          epsilon: float):
    """Energy plus its exact gradient with respect to all nodal data.

    Returns (energy, grad_values, grad_derivs); constraint masking is
    the caller's business.
    """
    u, p, q = _quad_fields(grid, values, derivs)
    if np.min(u) <= 0.0:
        raise NonPositiveProfile("interpolant is not strictly positive at "
                                 "quadrature points")
    s2 = 1.0 + p * p
    s = np.sqrt(s2)
    us = u * s
    g = 1.0 / us - q / (s2 * s)
    integrand = 0.5 * _PI * g * g * us + epsilon * 2.0 * _PI * us
    energy = 2.0 * float(np.sum(grid.quad_w * integrand))

    g_u = -1.0 / (u * us)
    g_p = -p / (u * s2 * s) + 3.0 * p * q / (s2 * s2 * s)
    dI_du = (0.5 * _PI * (2.0 * g * g_u * us + g * g * s)
             + epsilon * 2.0 * _PI * s)
    dI_dp = (0.5 * _PI * (2.0 * g * g_p * us + g * g * u * p / s)
             + epsilon * 2.0 * _PI * u * p / s)
    dI_dq = -_PI * g * u / s2

    w = grid.quad_w
    local = (np.einsum("eq,eqj->ej", w * dI_du, grid.basis0)
             + np.einsum("eq,eqj->ej", w * dI_dp, grid.basis1)
             + np.einsum("eq,eqj->ej", w * dI_dq, grid.basis2))
    m = grid.nodes.size
    grad_v = np.zeros(m)
    grad_d = np.zeros(m)
    grad_v[:-1] += local[:, 0]
    grad_d[:-1] += local[:, 1]
    grad_v[1:] += local[:, 2]
    grad_d[1:] += local[:, 3]
    return energy, 2.0 * grad_v, 2.0 * grad_d


# -- free degree-of-freedom layout ------------------------------------

def free_dof_vector(curve: ProfileCurve) -> np.ndarray:
    """Pack the unconstrained nodal data as [values[:-1], derivatives[1:-1]].

    u(1) = alpha, u'(1) = 0 and u'(0) = 0 are held fixed, leaving
    2 * n_elements - 1 free entries.
    """
    return np.concatenate([curve.values[:-1], curve.derivatives[1:-1]])


def curve_with_free_dofs(curve: ProfileCurve, z: np.ndarray) -> ProfileCurve:
    """Rebuild a profile from a free-DOF vector on the same grid."""
    m = curve.grid.nodes.size
    values = np.empty(m)
    derivs = np.zeros(m)
    values[:-1] = z[:m - 1]
    values[-1] = curve.alpha
    derivs[1:-1] = z[m - 1:]
    return build_profile(curve.alpha, curve.grid, values, derivs)


# -- public energies ---------------------------------------------------

def area(curve: ProfileCurve) -> float:
    """Lateral area 2 pi Int_{-1}^{1} u sqrt(1 + u'^2) dx."""
    u, p, _ = _quad_fields(curve.grid, curve.values, curve.derivatives)
    return 2.0 * float(np.sum(curve.grid.quad_w
                              * 2.0 * _PI * u * np.sqrt(1.0 + p * p)))


def willmore(curve: ProfileCurve) -> float:
    """Willmore energy (pi / 2) Int (2H)^2 u sqrt(1 + u'^2) dx."""
    u, p, q = _quad_fields(curve.grid, curve.values, curve.derivatives)
    s2 = 1.0 + p * p
    s = np.sqrt(s2)
    g = 1.0 / (u * s) - q / (s2 * s)
    return 2.0 * float(np.sum(curve.grid.quad_w * 0.5 * _PI * g * g * u * s))


@dataclass(frozen=True)
class EnergyReport:
    """Energy breakdown with the closed-form bound diagnostics.

    product_bound_slack is A * W - 4 pi^2, nonnegative for admissible
    profiles.  gradient_bound is the slope ceiling W / sqrt(16 pi^2 -
    W^2), infinite once W >= 4 pi.
    """
    epsilon: float
    area: float
    willmore: float
    helfrich: float
    product_bound_slack: float
    gradient_bound: float


def helfrich(curve: ProfileCurve, epsilon: float) -> EnergyReport:
    """Total energy W + eps A with bound diagnostics."""
    if epsilon < 0.0:
        raise OutOfDomain(f"epsilon must be nonnegative, got {epsilon!r}")
    a = area(curve)
    w = willmore(curve)
    if w < 4.0 * _PI:
        gradient_bound = w / math.sqrt(16.0 * _PI * _PI - w * w)
    else:
        gradient_bound = math.inf
    return EnergyReport(epsilon=epsilon, area=a, willmore=w,
                        helfrich=w + epsilon * a,
                        product_bound_slack=a * w - _FOUR_PI_SQ,
                        gradient_bound=gradient_bound)


def helfrich_gradient(curve: ProfileCurve, epsilon: float) -> np.ndarray:
    """Exact gradient of the discrete energy over the free DOF vector.

    The layout matches `free_dof_vector`: values at nodes 0..n-1
    followed by derivatives at interior nodes.
    """
    if epsilon < 0.0:
        raise OutOfDomain(f"epsilon must be nonnegative, got {epsilon!r}")
    _, gv, gd = _gradient_from_arrays(curve.grid, curve.values,
                                      curve.derivatives, epsilon)
    return np.concatenate([gv[:-1], gd[1:-1]])


def willmore_identity_check(curve: ProfileCurve, a: float = -1.0,
                            b: float = 1.0) -> tuple[float, float, float]:
    """Three algebraically equal forms of the Willmore integral over [a, b].

    Returns the plain integrals (no pi / 2 factor):

        I1 = Int (1/(u s) - u''/s^3)^2 u s dx
        I2 = Int ((1/(u s))^2 + (u''/s^3)^2) u s dx - 2 [u'/s]_a^b
        I3 = Int (1/(u s) + u''/s^3)^2 u s dx - 4 [u'/s]_a^b

    with s = sqrt(1 + u'^2).  Agreement across the three is a quadrature
    and mirroring diagnostic; it is exact in the continuum.
    """
    pts, wts = subinterval_quadrature(curve, a, b)
    u, p, q = curve.evaluate(pts)
    s2 = 1.0 + p * p
    s = np.sqrt(s2)
    inv = 1.0 / (u * s)
    bend = q / (s2 * s)
    us = u * s

    def boundary(x: float) -> float:
        _, du, _ = curve.evaluate(np.asarray([x]))
        return float(du[0] / math.sqrt(1.0 + du[0] ** 2))

    bt = boundary(b) - boundary(a)
    i1 = float(np.sum(wts * (inv - bend) ** 2 * us))
    i2 = float(np.sum(wts * (inv * inv + bend * bend) * us)) - 2.0 * bt
    i3 = float(np.sum(wts * (inv + bend) ** 2 * us)) - 4.0 * bt
    return i1, i2, i3


# -- closed-form lower and upper bounds --------------------------------

def bound_suite(curve: ProfileCurve, epsilon: float | None = None) -> dict:
    """Evaluate the closed-form energy bounds on a profile.

    Each entry reports lhs, rhs, whether the bound's hypotheses apply to
    this curve (clamped boundary slopes where required), and whether it
    holds.  Bounds whose hypotheses fail are reported as inapplicable
    rather than violated; the exact catenary, with its free boundary
    slope, is the canonical inapplicable case.
    """
    a = area(curve)
    w = willmore(curve)
    clamped = bool(curve.derivatives[0] == 0.0 and curve.derivatives[-1] == 0.0)
    x_dense = np.linspace(0.0, 1.0, 2049)
    u_dense, p_dense, _ = curve.evaluate(x_dense)
    max_slope = float(np.max(np.abs(p_dense)))
    min_value = float(np.min(u_dense))

    report: dict[str, dict] = {
        "area_willmore_product": {
            "lhs": a * w,
            "rhs": _FOUR_PI_SQ,
            "applicable": clamped,
            "satisfied": (not clamped) or a * w >= _FOUR_PI_SQ * (1.0 - 1e-12),
        },
    }

    slope_applicable = clamped and w < 4.0 * _PI
    slope_rhs = (w / math.sqrt(16.0 * _PI * _PI - w * w)
                 if w < 4.0 * _PI else math.inf)
    report["slope_ceiling"] = {
        "lhs": max_slope,
        "rhs": slope_rhs,
        "applicable": slope_applicable,
        "satisfied": (not slope_applicable) or max_slope <= slope_rhs * (1.0 + 1e-12),
    }

    anchored = bool(curve.values[-1] == curve.alpha)
    m = max_slope
    value_floor = curve.alpha * math.exp(
        -(1.0 / _PI) * m * math.sqrt(1.0 + m * m) * w)
    report["value_band"] = {
        "floor": value_floor,
        "ceiling": curve.alpha + m,
        "min_value": min_value,
        "max_value": float(np.max(u_dense)),
        "applicable": anchored,
        "satisfied": (not anchored) or (
            min_value >= value_floor * (1.0 - 1e-12)
            and float(np.max(u_dense)) <= (curve.alpha + m) * (1.0 + 1e-12)),
    }

    if epsilon is not None:
        if epsilon < 0.0:
            raise OutOfDomain(f"epsilon must be nonnegative, got {epsilon!r}")
        total = w + epsilon * a
        floor = 4.0 * _PI * math.sqrt(epsilon)
        report["energy_floor"] = {
            "lhs": total,
            "rhs": floor,
            "applicable": clamped,
            "satisfied": (not clamped) or total >= floor * (1.0 - 1e-12),
        }
        disc = total * total - 16.0 * _PI * _PI * epsilon
        cap_applicable = clamped and disc >= 0.0
        cap = 0.5 * (total + math.sqrt(disc)) if disc >= 0.0 else math.nan
        report["willmore_ceiling"] = {
            "lhs": w,
            "rhs": cap,
            "applicable": cap_applicable,
            "satisfied": (not cap_applicable) or w <= cap * (1.0 + 1e-12),
        }
    return report


# -- spherical cap glued to a catenary ---------------------------------

@dataclass(frozen=True)
class ComparisonSurface:
    """Sphere arc for |x| < x0 joined C^1 to alpha cosh((|x| - 1)/alpha).

    x0 in (1/2, 1) solves x + alpha cosh((x-1)/alpha) sinh((x-1)/alpha)
    = 0, and r = sqrt(x0^2 + alpha^2 cosh^2((x0-1)/alpha)) <=
    sqrt(1 + alpha^2).  The profile field is the grid sampling used as
    an admissible competitor and solver seed.
    """
    alpha: float
    x0: float
    r: float
    profile: ProfileCurve


def build_comparison_surface(alpha: float, grid: Grid) -> ComparisonSurface:
    """Construct the sphere-catenary competitor for the given alpha."""
    if alpha <= 0.0:
        raise OutOfDomain(f"alpha must be positive, got {alpha!r}")

    def junction(x: float) -> float:
        y = (x - 1.0) / alpha
        return x + alpha * math.cosh(y) * math.sinh(y)

    x0 = bisect(junction, 0.5, 1.0, xtol=1e-14)
    r = math.hypot(x0, alpha * math.cosh((x0 - 1.0) / alpha))

    x = grid.nodes
    sphere = x < x0
    values = np.empty_like(x)
    derivs = np.empty_like(x)
    chord = np.sqrt(r * r - x[sphere] * x[sphere])
    values[sphere] = chord
    derivs[sphere] = -x[sphere] / chord
    y = (x[~sphere] - 1.0) / alpha
    values[~sphere] = alpha * np.cosh(y)
    derivs[~sphere] = np.sinh(y)
    profile = build_profile(alpha, grid, values, derivs)
    return ComparisonSurface(alpha=alpha, x0=x0, r=r, profile=profile)


def comparison_energy_bound(alpha: float, epsilon: float) -> float:
    """Closed-form ceiling for the comparison surface's energy.

    4 pi tanh(1/(2 alpha)) + eps (4 pi sqrt(1 + alpha^2) + pi alpha
    + pi alpha^2 sinh(1/alpha)); the true energy lies strictly below.
    """
    if alpha <= 0.0:
        raise OutOfDomain(f"alpha must be positive, got {alpha!r}")
    if epsilon < 0.0:
        raise OutOfDomain(f"epsilon must be nonnegative, got {epsilon!r}")
    return (4.0 * _PI * math.tanh(0.5 / alpha)
            + epsilon * (4.0 * _PI * math.sqrt(1.0 + alpha * alpha)
                         + _PI * alpha
                         + _PI * alpha * alpha * math.sinh(1.0 / alpha)))


# -- existence regimes -------------------------------------------------

@dataclass(frozen=True)
class RegimeLabel:
    """Which closed-form existence arguments cover the pair (alpha, eps)."""
    alpha: float
    epsilon: float
    via_cylinder: bool
    via_comparison: bool
    via_gluing: bool
    on_cylinder_curve: bool


def classify_regime(alpha: float, epsilon: float,
                    table: catenoids.ConstantsTable | None = None
                    ) -> RegimeLabel:
    """Label (alpha, epsilon) by the applicable existence mechanisms.

    via_cylinder   alpha > 1/4 and 0 <= eps < 1/alpha: the cylinder's
                   energy already beats the existence gate pi (4 + eps).
    via_comparison eps small enough that the comparison surface bound
                   stays below the gate.
    via_gluing     alpha >= alpha_m and eps >= 1/(4 c1^2): monotone
                   rearrangement towards the flat catenary applies.
    on_cylinder_curve  eps = 1/(4 alpha^2), where the cylinder is the
                   unique minimiser.
    """
    if alpha <= 0.0:
        raise OutOfDomain(f"alpha must be positive, got {alpha!r}")
    if epsilon < 0.0:
        raise OutOfDomain(f"epsilon must be nonnegative, got {epsilon!r}")
    if table is None:
        table = catenoids.compute_constants()

    via_cylinder = alpha > 0.25 and epsilon < 1.0 / alpha

    denom = (math.sqrt(1.0 + alpha * alpha) + 0.25 * alpha
             + 0.25 * alpha * alpha * math.sinh(1.0 / alpha) - 0.25)
    via_comparison = epsilon <= (1.0 - math.tanh(0.5 / alpha)) / denom

    via_gluing = False
    if alpha >= table.alpha_m:
        branch = catenoids.solve_catenary_branches(alpha, table)
        via_gluing = epsilon >= branch.eps_hat

    eps_cyl = 1.0 / (4.0 * alpha * alpha)
    on_curve = abs(epsilon - eps_cyl) <= 1e-12 * max(1.0, eps_cyl)

    return RegimeLabel(alpha=alpha, epsilon=epsilon,
                       via_cylinder=via_cylinder,
                       via_comparison=via_comparison,
                       via_gluing=via_gluing,
                       on_cylinder_curve=on_curve)
