"""Energy functionals, gradients, closed-form bounds, and regime labels."""

from __future__ import annotations

import math

import numpy as np
import pytest

import helfrev as hv
from conftest import random_admissible

FOUR_PI_SQ = 4.0 * math.pi ** 2


def test_cylinder_energy_closed_form():
    rng = np.random.default_rng(21)
    grid = hv.Grid.uniform(32)
    for _ in range(10):
        alpha = float(rng.uniform(0.3, 4.0))
        epsilon = float(rng.uniform(0.0, 5.0))
        report = hv.helfrich(hv.cylinder_profile(alpha, grid), epsilon)
        exact = math.pi / alpha + 4.0 * math.pi * alpha * epsilon
        assert math.isclose(report.helfrich, exact, rel_tol=1e-12)
        assert math.isclose(report.willmore, math.pi / alpha, rel_tol=1e-12)
        assert math.isclose(report.area, 4.0 * math.pi * alpha, rel_tol=1e-12)


def test_helfrich_is_willmore_plus_scaled_area():
    rng = np.random.default_rng(22)
    curve = random_admissible(1.8, hv.Grid.uniform(24), rng, 0.5)
    epsilon = 0.7
    report = hv.helfrich(curve, epsilon)
    assert math.isclose(report.helfrich,
                        report.willmore + epsilon * report.area,
                        rel_tol=1e-14)
    assert math.isclose(report.product_bound_slack,
                        report.area * report.willmore - FOUR_PI_SQ,
                        rel_tol=1e-12)


def test_negative_epsilon_rejected():
    curve = hv.cylinder_profile(1.0, hv.Grid.uniform(8))
    with pytest.raises(hv.OutOfDomain):
        hv.helfrich(curve, -0.1)
    with pytest.raises(hv.OutOfDomain):
        hv.classify_regime(1.0, -0.1)


def test_catenary_area_quadrature_matches_closed_form():
    grid = hv.Grid.uniform(64)
    for c in (0.5, 1.0, 2.0, 5.0):
        curve = hv.catenary_profile(c, grid)
        assert math.isclose(hv.area(curve), hv.catenary_area(c),
                            rel_tol=1e-8)


def test_catenary_willmore_vanishes():
    c1 = hv.solve_catenary_branches(2.0).c1
    curve = hv.catenary_profile(c1, hv.Grid.uniform(256))
    assert hv.willmore(curve) <= 1e-10


def test_cylinder_gradient_vanishes_only_at_matched_epsilon():
    alpha = 1.3
    curve = hv.cylinder_profile(alpha, hv.Grid.uniform(32))
    eps_star = 1.0 / (4.0 * alpha * alpha)
    at_star = hv.helfrich_gradient(curve, eps_star)
    assert float(np.max(np.abs(at_star))) <= 1e-11
    away = hv.helfrich_gradient(curve, eps_star + 0.5)
    assert float(np.max(np.abs(away))) > 1e-3


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(23)
    curve = random_admissible(1.5, hv.Grid.uniform(8), rng, 0.4)
    epsilon = 0.6
    grad = hv.helfrich_gradient(curve, epsilon)
    dofs = hv.energy.free_dof_vector(curve)
    assert grad.shape == dofs.shape
    delta = 1e-6
    for k in range(len(dofs)):
        plus = dofs.copy()
        minus = dofs.copy()
        plus[k] += delta
        minus[k] -= delta
        f_plus = hv.helfrich(
            hv.energy.curve_with_free_dofs(curve, plus), epsilon).helfrich
        f_minus = hv.helfrich(
            hv.energy.curve_with_free_dofs(curve, minus), epsilon).helfrich
        fd = (f_plus - f_minus) / (2.0 * delta)
        assert math.isclose(grad[k], fd, rel_tol=5e-6, abs_tol=5e-6)


def test_willmore_identity_three_forms_agree():
    rng = np.random.default_rng(24)
    for alpha, amp in ((1.0, 0.3), (2.0, 0.5)):
        curve = random_admissible(alpha, hv.Grid.uniform(48), rng, amp)
        i1, i2, i3 = hv.willmore_identity_check(curve)
        scale = max(1.0, abs(i1))
        assert abs(i1 - i2) <= 1e-10 * scale
        assert abs(i1 - i3) <= 1e-10 * scale


def test_bound_suite_tight_on_cylinder_curve():
    alpha = 1.0
    suite = hv.bound_suite(hv.cylinder_profile(alpha, hv.Grid.uniform(16)),
                           0.25)
    for name in ("area_willmore_product", "slope_ceiling", "value_band",
                 "energy_floor", "willmore_ceiling"):
        assert suite[name]["applicable"], name
        assert suite[name]["satisfied"], name
    # the cylinder at its own epsilon saturates both product and floor
    prod = suite["area_willmore_product"]
    assert math.isclose(prod["lhs"], prod["rhs"], rel_tol=1e-12)
    floor = suite["energy_floor"]
    assert math.isclose(floor["lhs"], floor["rhs"], rel_tol=1e-12)


def test_bound_suite_flags_unclamped_profiles():
    c1 = hv.solve_catenary_branches(2.0).c1
    free = hv.catenary_profile(c1, hv.Grid.uniform(64))
    suite = hv.bound_suite(free, 1.0)
    assert not suite["area_willmore_product"]["applicable"]
    assert not suite["energy_floor"]["applicable"]
    # inapplicable entries never report a violation
    assert suite["area_willmore_product"]["satisfied"]


def test_bound_suite_holds_on_random_admissible_curves():
    rng = np.random.default_rng(25)
    grid = hv.Grid.uniform(32)
    for _ in range(30):
        alpha = float(rng.uniform(0.4, 3.0))
        epsilon = float(rng.uniform(0.0, 5.0))
        curve = random_admissible(alpha, grid, rng, 0.3 * alpha)
        suite = hv.bound_suite(curve, epsilon)
        for name, entry in suite.items():
            assert entry["satisfied"], (name, alpha, epsilon)


def test_regime_labels_at_known_points():
    on_curve = hv.classify_regime(1.0, 0.25)
    assert on_curve.on_cylinder_curve
    assert on_curve.via_cylinder
    assert not on_curve.via_gluing

    assert hv.classify_regime(0.5, 0.1).via_cylinder
    assert hv.classify_regime(2.0, 1.0).via_gluing

    with pytest.raises(hv.OutOfDomain):
        hv.classify_regime(-1.0, 0.1)


def test_comparison_surface_energy_below_bound():
    alpha, epsilon = 2.0, 1.0
    surface = hv.build_comparison_surface(alpha, hv.Grid.uniform(128))
    assert surface.profile.is_admissible
    assert surface.profile.alpha == alpha
    measured = hv.helfrich(surface.profile, epsilon).helfrich
    assert measured <= hv.comparison_energy_bound(alpha, epsilon)


def test_free_dof_round_trip():
    rng = np.random.default_rng(26)
    curve = random_admissible(1.1, hv.Grid.uniform(12), rng, 0.3)
    dofs = hv.energy.free_dof_vector(curve)
    back = hv.energy.curve_with_free_dofs(curve, dofs)
    assert np.array_equal(back.values, curve.values)
    assert np.array_equal(back.derivatives, curve.derivatives)
