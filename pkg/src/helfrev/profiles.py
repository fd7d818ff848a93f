"""Even surface-of-revolution profiles on [-1, 1].

A profile u is stored on the half interval [0, 1] as piecewise cubic
Hermite data (value and derivative per node) and extended to [-1, 1] by
even reflection, so evenness is exact by construction.  The interpolant
is C^1; its second derivative is piecewise linear with jumps at nodes,
and evaluation at a node uses the one-sided limit from the element to
the left.

Admissible profiles (the clamped symmetric class) additionally satisfy
u(1) = alpha and u'(0) = u'(1) = 0; `build_profile` overwrites those
constraints onto the supplied data.  Relaxed profiles with free boundary
slope (exact catenaries, say) can be built with `profile_from_function`
and are accepted by the energy and validator routines, which check
admissibility only where a statement requires it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BadGrid, NonPositiveProfile, OutOfDomain

DEFAULT_QUADRATURE_ORDER = 5
POSITIVITY_FLOOR = 1e-12


def _hermite_rows(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cubic Hermite shape functions and their t-derivatives at t in [0, 1].

    Returns three (..., 4) arrays ordered (value left, slope left,
    value right, slope right); slope columns still need the h scaling.
    """
    t2 = t * t
    t3 = t2 * t
    h0 = np.stack([1.0 - 3.0 * t2 + 2.0 * t3,
                   t - 2.0 * t2 + t3,
                   3.0 * t2 - 2.0 * t3,
                   t3 - t2], axis=-1)
    h1 = np.stack([6.0 * t2 - 6.0 * t,
                   3.0 * t2 - 4.0 * t + 1.0,
                   6.0 * t - 6.0 * t2,
                   3.0 * t2 - 2.0 * t], axis=-1)
    h2 = np.stack([12.0 * t - 6.0,
                   6.0 * t - 4.0,
                   6.0 - 12.0 * t,
                   6.0 * t - 2.0], axis=-1)
    return h0, h1, h2


class Grid:
    """Partition of the half interval [0, 1] with per-element Gauss rules.

    Parameters
    ----------
    nodes : array_like
        Strictly increasing node coordinates with nodes[0] = 0 and
        nodes[-1] = 1.
    quadrature_order : int
        Gauss-Legendre points per element, at least 3.

    Notes
    -----
    The quadrature tables and Hermite basis values at quadrature points
    are precomputed once here and shared read-only by the energy and
    solver routines.
    """

    def __init__(self, nodes: Sequence[float],
                 quadrature_order: int = DEFAULT_QUADRATURE_ORDER) -> None:
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise BadGrid("grid needs at least two nodes")
        if nodes[0] != 0.0 or nodes[-1] != 1.0:
            raise BadGrid("grid must span [0, 1] exactly")
        if not np.all(np.diff(nodes) > 0.0):
            raise BadGrid("grid nodes must be strictly increasing")
        if quadrature_order < 3:
            raise BadGrid("quadrature order below 3 cannot integrate the "
                          "curvature terms of a cubic reliably")
        self.nodes = nodes
        self.nodes.flags.writeable = False
        self.quadrature_order = int(quadrature_order)
        self.n_elements = nodes.size - 1
        self.element_sizes = np.diff(nodes)
        self.element_sizes.flags.writeable = False

        # Reference Gauss-Legendre rule mapped to t in [0, 1].
        gl_x, gl_w = np.polynomial.legendre.leggauss(self.quadrature_order)
        t = 0.5 * (gl_x + 1.0)
        h = self.element_sizes[:, None]
        self.quad_x = self.nodes[:-1, None] + h * t[None, :]
        self.quad_w = 0.5 * gl_w[None, :] * h
        b0, b1, b2 = _hermite_rows(t)
        scale = np.ones((self.n_elements, 1, 4))
        scale[:, 0, 1] = self.element_sizes
        scale[:, 0, 3] = self.element_sizes
        self.basis0 = b0[None, :, :] * scale
        self.basis1 = b1[None, :, :] * scale / h[:, :, None]
        self.basis2 = b2[None, :, :] * scale / (h * h)[:, :, None]
        for arr in (self.quad_x, self.quad_w, self.basis0, self.basis1,
                    self.basis2):
            arr.flags.writeable = False

    @classmethod
    def uniform(cls, n_elements: int = 64,
                quadrature_order: int = DEFAULT_QUADRATURE_ORDER) -> "Grid":
        if n_elements < 1:
            raise BadGrid("need at least one element")
        return cls(np.linspace(0.0, 1.0, n_elements + 1), quadrature_order)

    @classmethod
    def boundary_refined(cls, n_elements: int = 64, ratio: float = 1.2,
                         quadrature_order: int = DEFAULT_QUADRATURE_ORDER) -> "Grid":
        """Geometrically graded grid, elements shrinking toward x = 1.

        The symmetry centre x = 0 needs no refinement; the mirrored
        boundary at x = -1 inherits the grading through evenness.
        """
        if n_elements < 1:
            raise BadGrid("need at least one element")
        if ratio <= 1.0:
            raise BadGrid("refinement ratio must exceed 1")
        # cap the size spread at two decades: smaller elements buy no
        # accuracy and their 1/h^2 basis scaling erodes conditioning
        max_power = math.floor(math.log(1e2) / math.log(ratio))
        powers = np.minimum(np.arange(n_elements, dtype=float), max_power)
        sizes = ratio ** (-powers)
        sizes /= sizes.sum()
        nodes = np.concatenate([[0.0], np.cumsum(sizes)])
        nodes[-1] = 1.0
        return cls(nodes, quadrature_order)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Grid)
                and self.quadrature_order == other.quadrature_order
                and np.array_equal(self.nodes, other.nodes))

    def __repr__(self) -> str:
        return (f"Grid(n_elements={self.n_elements}, "
                f"quadrature_order={self.quadrature_order})")


@dataclass(frozen=True)
class GeometrySample:
    """Pointwise geometry of the surface of revolution at abscissa x."""
    x: float
    u: float
    du: float
    ddu: float
    mean_curvature: float
    gauss_curvature: float
    area_element: float


@dataclass(frozen=True)
class ProfileCurve:
    """Nodal profile data on a grid, interpreted as an even C^1 curve.

    values[i] and derivatives[i] are u and u' at grid.nodes[i]; the
    curve on [-1, 0] is the even reflection.  Values must stay strictly
    positive; enforcement is by rejection, never by clamping.
    """
    grid: Grid
    alpha: float
    values: np.ndarray
    derivatives: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        derivs = np.asarray(self.derivatives, dtype=float)
        if values.shape != self.grid.nodes.shape or derivs.shape != values.shape:
            raise BadGrid("nodal arrays must match the grid node count")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(derivs))):
            raise NonPositiveProfile("nodal data must be finite")
        if self.alpha <= 0.0:
            raise NonPositiveProfile(f"alpha must be positive, got {self.alpha}")
        if np.min(values) <= POSITIVITY_FLOOR:
            raise NonPositiveProfile(
                f"profile min {np.min(values)!r} is not strictly positive")
        values = values.copy()
        derivs = derivs.copy()
        values.flags.writeable = False
        derivs.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "derivatives", derivs)

    @property
    def is_admissible(self) -> bool:
        """True when the clamped symmetric boundary conditions hold exactly."""
        return (self.values[-1] == self.alpha
                and self.derivatives[0] == 0.0
                and self.derivatives[-1] == 0.0)

    # -- evaluation ----------------------------------------------------

    def _element_dofs(self) -> np.ndarray:
        v, d = self.values, self.derivatives
        return np.stack([v[:-1], d[:-1], v[1:], d[1:]], axis=1)

    def evaluate(self, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Evaluate (u, u', u'') at points x in [-1, 1].

        Derivatives at x < 0 follow from evenness: u' is odd, u'' even.
        Second derivatives at nodes are the one-sided limit from the
        left element.
        """
        x = np.asarray(x, dtype=float)
        if np.any(np.abs(x) > 1.0 + 1e-15):
            raise OutOfDomain(f"points outside [-1, 1]: max |x| = {np.max(np.abs(x))}")
        xm = np.minimum(np.abs(x), 1.0)
        nodes = self.grid.nodes
        idx = np.clip(np.searchsorted(nodes, xm, side="left") - 1,
                      0, self.grid.n_elements - 1)
        h = self.grid.element_sizes[idx]
        t = (xm - nodes[idx]) / h
        b0, b1, b2 = _hermite_rows(t)
        dof = self._element_dofs()[idx]
        hh = np.stack([np.ones_like(h), h, np.ones_like(h), h], axis=-1)
        u = np.sum(b0 * hh * dof, axis=-1)
        du = np.sum(b1 * hh * dof, axis=-1) / h
        ddu = np.sum(b2 * hh * dof, axis=-1) / (h * h)
        du = du * np.where(x < 0.0, -1.0, 1.0)
        return u, du, ddu

    def __call__(self, x) -> np.ndarray:
        return self.evaluate(x)[0]


def build_profile(alpha: float, grid: Grid, values, derivatives) -> ProfileCurve:
    """Construct an admissible profile, overwriting the clamped constraints.

    Parameters
    ----------
    alpha : float
        Boundary radius, u(+-1) = alpha > 0.
    grid : Grid
        Half-interval partition carrying the quadrature rule.
    values, derivatives : array_like
        Nodal u and u' data on grid.nodes.  The entries implied by the
        boundary and symmetry conditions (u(1), u'(1), u'(0)) are
        replaced, not checked.

    Raises
    ------
    NonPositiveProfile
        If any nodal value is not strictly positive after clamping.
    """
    values = np.array(values, dtype=float)
    derivatives = np.array(derivatives, dtype=float)
    if values.shape != grid.nodes.shape or derivatives.shape != grid.nodes.shape:
        raise BadGrid("nodal arrays must match the grid node count")
    values[-1] = alpha
    derivatives[0] = 0.0
    derivatives[-1] = 0.0
    return ProfileCurve(grid=grid, alpha=alpha, values=values,
                        derivatives=derivatives)


def profile_from_function(alpha: float, grid: Grid,
                          f: Callable[[np.ndarray], np.ndarray],
                          df: Callable[[np.ndarray], np.ndarray],
                          clamp: bool = True) -> ProfileCurve:
    """Sample an even function onto the grid.

    With clamp=True the result is admissible (boundary data overwritten);
    with clamp=False the sampled boundary slope is kept, which is the
    right representation for exact catenaries and other curves outside
    the clamped class.
    """
    x = grid.nodes
    values = np.asarray(f(x), dtype=float)
    derivatives = np.asarray(df(x), dtype=float)
    if clamp:
        return build_profile(alpha, grid, values, derivatives)
    derivatives = derivatives.copy()
    derivatives[0] = 0.0
    return ProfileCurve(grid=grid, alpha=alpha, values=values,
                        derivatives=derivatives)


def cylinder_profile(alpha: float, grid: Grid) -> ProfileCurve:
    """The constant profile u = alpha."""
    n = grid.nodes.size
    return build_profile(alpha, grid, np.full(n, alpha), np.zeros(n))


def catenary_profile(c: float, grid: Grid, clamp: bool = False) -> ProfileCurve:
    """The catenary u = c cosh(x / c) with alpha = c cosh(1 / c).

    Unclamped by default: the exact catenary has nonzero boundary slope
    and serves as a closed-form reference rather than an admissible
    competitor.
    """
    if c <= 0.0:
        raise NonPositiveProfile("catenary parameter must be positive")
    alpha = c * np.cosh(1.0 / c)
    return profile_from_function(
        alpha, grid,
        lambda x: c * np.cosh(x / c),
        lambda x: np.sinh(x / c),
        clamp=clamp)


def curvatures(u: np.ndarray, du: np.ndarray, ddu: np.ndarray
               ) -> tuple[np.ndarray, np.ndarray]:
    """Mean and Gauss curvature of the surface of revolution.

    H = (1 / (u sqrt(1 + u'^2)) - u'' / (1 + u'^2)^(3/2)) / 2
    K = -u'' / (u (1 + u'^2)^2)
    """
    s2 = 1.0 + du * du
    s = np.sqrt(s2)
    mean = 0.5 * (1.0 / (u * s) - ddu / (s2 * s))
    gauss = -ddu / (u * s2 * s2)
    return mean, gauss


def evaluate_geometry(curve: ProfileCurve, x: float) -> GeometrySample:
    """Pointwise geometry report at a single abscissa."""
    u, du, ddu = curve.evaluate(np.asarray([x], dtype=float))
    mean, gauss = curvatures(u, du, ddu)
    area_el = u * np.sqrt(1.0 + du * du)
    return GeometrySample(x=float(x), u=float(u[0]), du=float(du[0]),
                          ddu=float(ddu[0]), mean_curvature=float(mean[0]),
                          gauss_curvature=float(gauss[0]),
                          area_element=float(area_el[0]))


def mirror_consistency_check(curve: ProfileCurve, x_samples=None) -> bool:
    """Check u(-x) = u(x), u'(-x) = -u'(x), u''(-x) = u''(x) to round-off."""
    if x_samples is None:
        x_samples = np.linspace(0.0, 1.0, 257)
    x = np.asarray(x_samples, dtype=float)
    up, dup, ddup = curve.evaluate(x)
    um, dum, ddum = curve.evaluate(-x)
    scale = max(1.0, float(np.max(np.abs(up))))
    tol = 1e-13 * scale
    return (np.max(np.abs(up - um)) <= tol
            and np.max(np.abs(dup + dum)) <= tol * 10.0
            and np.max(np.abs(ddup - ddum)) <= tol * 1e3)


def resample(curve: ProfileCurve, grid: Grid, clamp: bool = True) -> ProfileCurve:
    """Re-sample a curve's interpolant onto another grid."""
    values, derivatives, _ = curve.evaluate(grid.nodes)
    if clamp:
        return build_profile(curve.alpha, grid, values, derivatives)
    derivatives = derivatives.copy()
    derivatives[0] = 0.0
    return ProfileCurve(grid=grid, alpha=curve.alpha, values=values,
                        derivatives=derivatives)


def subinterval_quadrature(curve: ProfileCurve, a: float, b: float
                           ) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature points and weights for integrals over [a, b] in [-1, 1].

    Splits [a, b] at 0 and at every mirrored element boundary so each
    Gauss panel sees a smooth integrand, then applies the grid's rule
    per panel.
    """
    if b < a:
        raise OutOfDomain("empty interval: b < a")
    if a < -1.0 or b > 1.0:
        raise OutOfDomain("interval must lie inside [-1, 1]")
    interior = curve.grid.nodes[1:-1]
    breaks = np.concatenate([[a, b], [0.0], interior, -interior])
    breaks = np.unique(breaks[(breaks >= a) & (breaks <= b)])
    gl_x, gl_w = np.polynomial.legendre.leggauss(curve.grid.quadrature_order)
    t = 0.5 * (gl_x + 1.0)
    lo = breaks[:-1][:, None]
    h = np.diff(breaks)[:, None]
    pts = (lo + h * t[None, :]).ravel()
    wts = (0.5 * h * gl_w[None, :]).ravel()
    return pts, wts


# -- serialization -----------------------------------------------------

def profile_to_json(curve: ProfileCurve) -> str:
    """Serialise nodal data as JSON with round-trip safe floats."""
    payload = {
        "alpha": curve.alpha,
        "nodes": curve.grid.nodes.tolist(),
        "values": curve.values.tolist(),
        "derivatives": curve.derivatives.tolist(),
    }
    return json.dumps(payload, indent=2)


def profile_from_json(text: str,
                      quadrature_order: int = DEFAULT_QUADRATURE_ORDER
                      ) -> ProfileCurve:
    """Load a profile serialised by `profile_to_json`.

    The quadrature order is part of the runtime grid, not the stored
    data; the default reproduces stored energies to round-off.
    """
    try:
        payload = json.loads(text)
        grid = Grid(np.asarray(payload["nodes"], dtype=float), quadrature_order)
        return ProfileCurve(grid=grid, alpha=float(payload["alpha"]),
                            values=np.asarray(payload["values"], dtype=float),
                            derivatives=np.asarray(payload["derivatives"],
                                                   dtype=float))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise BadGrid(f"profile payload is not valid: {exc}") from exc
