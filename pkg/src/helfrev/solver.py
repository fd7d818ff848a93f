"""Direct minimisation of the bending energy with weighted area.

The energy of a clamped symmetric profile is smooth in its Hermite
degrees of freedom, so the minimiser is found by limited-memory
quasi-Newton descent with a backtracking line search.  Steps whose
interpolant touches the positivity floor are rejected through a +inf
objective value rather than exceptions, which keeps the line search a
plain comparison loop.  Where the flat catenary competitor exists and
the area weight is large enough, the energy-non-increasing surgeries
from `gluing` run after convergence and the descent restarts whenever
they strictly lower the energy.

Every solve is deterministic: the only randomness is the seed
perturbation drawn from a generator with a fixed seed, so identical
configurations reproduce identical energy histories bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from . import catenoids
from .energy import (EnergyReport, _energy_from_arrays, _gradient_from_arrays,
                     build_comparison_surface, free_dof_vector, helfrich)
from .errors import BadGrid, HelfrevError, NonPositiveProfile, OutOfDomain
from .gluing import glue_catenary, insert_cylinder
from .profiles import (Grid, ProfileCurve, build_profile, catenary_profile,
                       cylinder_profile, resample)
from .validators import el_residual, first_integral

_SEED_NAMES = ("cylinder", "catenary", "comparison")


@dataclass(frozen=True)
class LineSearchParams:
    """Backtracking parameters: step shrink factor and Armijo constant."""

    shrink: float = 0.5
    sufficient_decrease: float = 1e-4
    max_backtracks: int = 60

    def __post_init__(self) -> None:
        if not 0.0 < self.shrink < 1.0:
            raise OutOfDomain("shrink factor must lie in (0, 1)")
        if not 0.0 < self.sufficient_decrease < 1.0:
            raise OutOfDomain("sufficient decrease constant must lie in (0,1)")
        if self.max_backtracks < 1:
            raise OutOfDomain("need at least one backtracking step")


@dataclass(frozen=True)
class SolverConfig:
    """Everything a solve needs besides (alpha, epsilon).

    `seed_profile` is one of the named seeds "cylinder" / "catenary" /
    "comparison" or a custom ProfileCurve (resampled onto `grid` if
    needed); `seed_noise` perturbs the seed's free degrees of freedom
    with Gaussian noise of that amplitude drawn from `random_seed`.
    Convergence is declared when the free-DOF gradient norm drops below
    `gradient_tolerance` times max(1, |energy|).
    """

    grid: Grid = field(default_factory=Grid.uniform)
    max_iterations: int = 2000
    gradient_tolerance: float = 1e-8
    line_search: LineSearchParams = field(default_factory=LineSearchParams)
    positivity_floor: float = 1e-8
    gluing_enabled: bool = True
    seed_profile: str | ProfileCurve = "cylinder"
    seed_noise: float = 0.0
    random_seed: int = 0
    lbfgs_memory: int = 10
    energy_flat_tolerance: float = 1e7 * np.finfo(float).eps

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise OutOfDomain("max_iterations must be positive")
        if not self.gradient_tolerance > 0.0:
            raise OutOfDomain("gradient tolerance must be positive")
        if not self.positivity_floor > 0.0:
            raise OutOfDomain("positivity floor must be positive")
        if self.lbfgs_memory < 1:
            raise OutOfDomain("quasi-Newton memory must be positive")
        if isinstance(self.seed_profile, str) \
                and self.seed_profile not in _SEED_NAMES:
            raise OutOfDomain(
                f"seed_profile must be one of {_SEED_NAMES} or a profile, "
                f"got {self.seed_profile!r}")
        if self.seed_noise < 0.0:
            raise OutOfDomain("seed_noise must be nonnegative")
        if not self.energy_flat_tolerance >= 0.0:
            raise OutOfDomain("energy_flat_tolerance must be nonnegative")


@dataclass(frozen=True)
class SolveResult:
    """Converged (or best-effort) minimiser with its diagnostics."""

    profile: ProfileCurve
    energy: EnergyReport
    gradient_norm: float
    iterations: int
    converged: bool
    energy_history: tuple[float, ...]
    el_residual: float
    first_integral_drift: float
    gluing_moves_applied: int


def _model_matrix(grid: Grid, alpha: float) -> np.ndarray:
    """Stiffness of the quadratic model pi (alpha w''^2 + w^2 / alpha^3).

    This is the linearised energy at the cylinder, assembled over the
    free DOFs.  Its inverse is the initial Hessian guess of the descent;
    without it the fourth-order stiffness makes quasi-Newton steps crawl
    at a rate that degrades like the fourth power of the resolution.
    """
    m = grid.nodes.size
    n_free = 2 * m - 3
    idx_value = np.arange(m)
    idx_value[m - 1] = -1
    idx_deriv = np.full(m, -1)
    idx_deriv[1:m - 1] = (m - 1) + np.arange(m - 2)

    mass = np.einsum("eq,eqj,eqk->ejk", grid.quad_w,
                     grid.basis0, grid.basis0)
    bend = np.einsum("eq,eqj,eqk->ejk", grid.quad_w,
                     grid.basis2, grid.basis2)
    local = 2.0 * math.pi * (alpha * bend + mass / alpha ** 3)

    matrix = np.zeros((n_free, n_free))
    for e in range(grid.n_elements):
        gidx = (idx_value[e], idx_deriv[e], idx_value[e + 1],
                idx_deriv[e + 1])
        for j in range(4):
            if gidx[j] < 0:
                continue
            for k in range(4):
                if gidx[k] >= 0:
                    matrix[gidx[j], gidx[k]] += local[e, j, k]
    return matrix


class _Objective:
    """Energy and gradient over the free DOF vector on a fixed grid."""

    def __init__(self, alpha: float, grid: Grid, epsilon: float,
                 floor: float) -> None:
        self.alpha = alpha
        self.grid = grid
        self.epsilon = epsilon
        self.floor = floor
        self.m = grid.nodes.size
        self._factor = None

    def precondition(self, q: np.ndarray) -> np.ndarray:
        if self._factor is None:
            self._factor = cho_factor(_model_matrix(self.grid, self.alpha),
                                      lower=True)
        return cho_solve(self._factor, q)

    def split(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        values = np.empty(self.m)
        derivs = np.zeros(self.m)
        values[:-1] = z[:self.m - 1]
        values[-1] = self.alpha
        derivs[1:-1] = z[self.m - 1:]
        return values, derivs

    def energy(self, z: np.ndarray) -> float:
        values, derivs = self.split(z)
        if np.min(values) <= self.floor:
            return math.inf
        return _energy_from_arrays(self.grid, values, derivs, self.epsilon,
                                   floor=self.floor)

    def energy_gradient(self, z: np.ndarray) -> tuple[float, np.ndarray]:
        values, derivs = self.split(z)
        energy, gv, gd = _gradient_from_arrays(self.grid, values, derivs,
                                               self.epsilon)
        return energy, np.concatenate([gv[:-1], gd[1:-1]])

    def curve(self, z: np.ndarray) -> ProfileCurve:
        values, derivs = self.split(z)
        return build_profile(self.alpha, self.grid, values, derivs)


def _build_seed(alpha: float, config: SolverConfig) -> ProfileCurve:
    seed = config.seed_profile
    if isinstance(seed, ProfileCurve):
        if not math.isclose(seed.alpha, alpha, rel_tol=1e-12):
            raise OutOfDomain(
                f"custom seed has alpha {seed.alpha!r}, solve wants {alpha!r}")
        curve = seed if seed.grid == config.grid \
            else resample(seed, config.grid, clamp=True)
        if not curve.is_admissible:
            curve = build_profile(alpha, config.grid, curve.values.copy(),
                                  curve.derivatives.copy())
    elif seed == "cylinder":
        curve = cylinder_profile(alpha, config.grid)
    elif seed == "catenary":
        branch = catenoids.solve_catenary_branches(alpha)
        curve = catenary_profile(branch.c1, config.grid, clamp=True)
    else:
        curve = build_comparison_surface(alpha, config.grid).profile

    if config.seed_noise > 0.0:
        rng = np.random.default_rng(config.random_seed)
        n_modes = 8
        coeff = rng.standard_normal(n_modes)
        x = curve.grid.nodes
        # Smooth even bumps (1 - x^2)^2 cos(k pi x): clamped to second
        # order at x = 1, so the perturbed seed stays admissible and its
        # bending energy stays bounded as the grid refines.
        window = (1.0 - x * x) ** 2
        d_window = -4.0 * x * (1.0 - x * x)
        bump = np.zeros_like(x)
        d_bump = np.zeros_like(x)
        for k, c in enumerate(coeff):
            phase = k * math.pi * x
            bump += c * window * np.cos(phase)
            d_bump += c * (d_window * np.cos(phase)
                           - k * math.pi * window * np.sin(phase))
        scale = config.seed_noise
        for _ in range(60):
            try:
                return build_profile(alpha, config.grid,
                                     curve.values + scale * bump,
                                     curve.derivatives + scale * d_bump)
            except NonPositiveProfile:
                scale *= 0.5
        raise NonPositiveProfile(
            "seed perturbation cannot be made positive at this amplitude")
    return curve


def _descend(obj: _Objective, z: np.ndarray, config: SolverConfig,
             first_call: bool) -> tuple[np.ndarray, float, float,
                                        list[float], int, bool]:
    """Limited-memory quasi-Newton descent from z.

    Returns (z, energy, gradient_norm, energy_history, iterations,
    converged).  Raises NonPositiveProfile if the very first line
    search only ever sees infeasible trial points.
    """
    ls = config.line_search
    f = obj.energy(z)
    if not math.isfinite(f):
        raise NonPositiveProfile("seed profile is infeasible on this grid")
    f, g = obj.energy_gradient(z)
    history = [f]
    s_mem: list[np.ndarray] = []
    y_mem: list[np.ndarray] = []
    rho_mem: list[float] = []
    flat_tol = config.energy_flat_tolerance
    flat_steps = 0

    # the rounding floor of the gradient scales with the energy size,
    # so the stopping test is relative to max(1, |energy|)
    iterations = 0
    converged = bool(np.linalg.norm(g)
                     <= config.gradient_tolerance * max(1.0, abs(f)))
    while not converged and iterations < config.max_iterations:
        q = g.copy()
        alphas = []
        for s, y, rho in zip(reversed(s_mem), reversed(y_mem),
                             reversed(rho_mem)):
            a = rho * float(s @ q)
            q -= a * y
            alphas.append(a)
        q = obj.precondition(q)
        for (s, y, rho), a in zip(zip(s_mem, y_mem, rho_mem),
                                  reversed(alphas)):
            b = rho * float(y @ q)
            q += s * (a - b)
        direction = -q
        slope = float(g @ direction)
        if slope >= 0.0:
            direction = -g
            slope = -float(g @ g)

        t = 1.0
        accepted = False
        saw_finite = False
        for _ in range(ls.max_backtracks):
            trial = z + t * direction
            f_trial = obj.energy(trial)
            if math.isfinite(f_trial):
                saw_finite = True
                if f_trial <= f + ls.sufficient_decrease * t * slope:
                    accepted = True
                    break
            t *= ls.shrink
        if not accepted:
            if first_call and iterations == 0 and not saw_finite:
                raise NonPositiveProfile(
                    "no feasible step exists from the seed profile")
            if s_mem:
                # quasi-Newton direction went bad; retry once from a
                # clean steepest-descent state before giving up
                s_mem.clear()
                y_mem.clear()
                rho_mem.clear()
                continue
            break

        f_new, g_new = obj.energy_gradient(trial)
        s_vec = trial - z
        y_vec = g_new - g
        sy = float(s_vec @ y_vec)
        if sy > 1e-14 * float(np.linalg.norm(s_vec)
                              * np.linalg.norm(y_vec)):
            s_mem.append(s_vec)
            y_mem.append(y_vec)
            rho_mem.append(1.0 / sy)
            if len(s_mem) > config.lbfgs_memory:
                s_mem.pop(0)
                y_mem.pop(0)
                rho_mem.pop(0)
        decrease = f - f_new
        flat_steps = flat_steps + 1 \
            if decrease <= flat_tol * max(1.0, abs(f_new)) else 0
        z, f, g = trial, f_new, g_new
        history.append(f)
        iterations += 1
        # either the gradient is small or the energy has stopped moving
        # at the resolution of the arithmetic
        converged = bool(np.linalg.norm(g)
                         <= config.gradient_tolerance * max(1.0, abs(f))) \
            or flat_steps >= 3

    return z, f, float(np.linalg.norm(g)), history, iterations, converged


def _gluing_applies(alpha: float, epsilon: float) -> bool:
    table = catenoids.compute_constants()
    if alpha < table.alpha_m:
        return False
    branch = catenoids.solve_catenary_branches(alpha, table)
    return epsilon >= branch.eps_hat


def minimise(alpha: float, epsilon: float,
             config: SolverConfig | None = None) -> SolveResult:
    """Minimise the energy at (alpha, epsilon) over the discrete class.

    Quasi-Newton descent from the configured seed; when the surgery
    regime holds and `gluing_enabled`, the catenary gluing and cylinder
    insertion repairs run after convergence and descent restarts while
    they strictly decrease the energy.  A result that hits the
    iteration cap is returned with `converged` False rather than
    raised.
    """
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise OutOfDomain(f"alpha must be positive and finite, got {alpha!r}")
    if not (epsilon >= 0.0 and math.isfinite(epsilon)):
        raise OutOfDomain(
            f"epsilon must be nonnegative and finite, got {epsilon!r}")
    if config is None:
        config = SolverConfig()

    seed_curve = _build_seed(alpha, config)
    obj = _Objective(alpha, config.grid, epsilon, config.positivity_floor)
    z = free_dof_vector(seed_curve)

    z, f, grad_norm, history, iterations, converged = _descend(
        obj, z, config, first_call=True)
    moves = 0

    if config.gluing_enabled and _gluing_applies(alpha, epsilon):
        for _ in range(3):
            current = obj.curve(z)
            repaired = current
            for op in (glue_catenary, insert_cylinder):
                try:
                    candidate = op(repaired, epsilon)
                except OutOfDomain:
                    continue
                if candidate is not repaired:
                    moves += 1
                    repaired = candidate
            if repaired is current:
                break
            if repaired.grid != obj.grid:
                obj = _Objective(alpha, repaired.grid, epsilon,
                                 config.positivity_floor)
            z = free_dof_vector(repaired)
            z, f, grad_norm, more, extra, converged = _descend(
                obj, z, config, first_call=False)
            history.extend(more)
            iterations += extra

    profile = obj.curve(z)
    report = helfrich(profile, epsilon)
    try:
        residual = el_residual(profile, epsilon)
        drift = first_integral(profile, epsilon).drift
    except BadGrid:
        residual = math.nan
        drift = math.nan
    return SolveResult(
        profile=profile,
        energy=report,
        gradient_norm=grad_norm,
        iterations=iterations,
        converged=converged,
        energy_history=tuple(history),
        el_residual=residual,
        first_integral_drift=drift,
        gluing_moves_applied=moves,
    )


@dataclass(frozen=True)
class ContinuationRung:
    """One ladder step: the solve outcome plus catenoid distances.

    The distance fields compare against the flat catenary branch and
    are filled only when that branch exists (alpha above the threshold
    where catenaries reach the boundary value).
    """

    epsilon: float
    result: SolveResult | None
    error: str | None
    catenoid_sup_distance: float | None
    catenoid_slope_l1_distance: float | None


def continuation_epsilon(alpha: float, epsilon_ladder, config:
                         SolverConfig | None = None
                         ) -> list[ContinuationRung]:
    """Solve along an increasing ladder of area weights.

    Each rung seeds from the last successful profile (the first from
    the configured seed).  For area weights of 100 and above the grid
    switches to the boundary-refined grading, since profiles steepen
    near the clamped ends on the way to the catenoid limit.  Failures
    are recorded on their rung and the ladder continues from the last
    success.
    """
    if config is None:
        config = SolverConfig()
    ladder = [float(e) for e in epsilon_ladder]
    if not ladder:
        raise OutOfDomain("the ladder must contain at least one weight")
    if any(e < 0.0 for e in ladder):
        raise OutOfDomain("ladder weights must be nonnegative")
    if any(b < a for a, b in zip(ladder, ladder[1:])):
        raise OutOfDomain("the ladder must be nondecreasing")

    table = catenoids.compute_constants()
    branch = None
    if alpha > table.alpha0:
        branch = catenoids.solve_catenary_branches(alpha, table)

    refined = Grid.boundary_refined(
        n_elements=config.grid.n_elements, ratio=1.2,
        quadrature_order=config.grid.quadrature_order)

    rungs: list[ContinuationRung] = []
    seed: ProfileCurve | None = None
    for eps in ladder:
        grid = refined if eps >= 100.0 else config.grid
        rung_config = replace(config, grid=grid,
                              seed_profile=seed if seed is not None
                              else config.seed_profile)
        try:
            result = minimise(alpha, eps, rung_config)
        except HelfrevError as exc:
            rungs.append(ContinuationRung(
                epsilon=eps, result=None,
                error=f"{type(exc).__name__}: {exc}",
                catenoid_sup_distance=None,
                catenoid_slope_l1_distance=None))
            continue
        if result.converged:
            seed = result.profile

        sup_dist = None
        slope_l1 = None
        if branch is not None:
            x = np.linspace(0.0, 1.0, 2049)
            u, du, _ = result.profile.evaluate(x)
            v = branch.c1 * np.cosh(x / branch.c1)
            dv = np.sinh(x / branch.c1)
            sup_dist = float(np.max(np.abs(u - v)))
            slope_l1 = 2.0 * float(np.trapezoid(np.abs(du - dv), x))
        rungs.append(ContinuationRung(
            epsilon=eps, result=result, error=None,
            catenoid_sup_distance=sup_dist,
            catenoid_slope_l1_distance=slope_l1))
    return rungs
