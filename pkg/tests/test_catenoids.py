"""Special constants and the two-branch catenary geometry."""

from __future__ import annotations

import math

import numpy as np
import pytest

import helfrev as hv


def test_constants_satisfy_their_defining_equations(constants):
    t = constants
    # c0 is the critical parameter of c cosh(1/c): c = tanh(1/c)
    assert abs(t.c0 - math.tanh(1.0 / t.c0)) <= 1e-13
    # alpha0 is the smallest reachable boundary radius
    assert abs(t.alpha0 - t.c0 * math.cosh(1.0 / t.c0)) <= 1e-12
    # cm = 2/t with t the fixed point of 1 + exp(-t)
    s = 2.0 / t.cm
    assert abs(s - 1.0 - math.exp(-s)) <= 1e-13
    assert abs(t.alpha_m - t.cm * math.cosh(1.0 / t.cm)) <= 1e-12
    # a_c is the tan = tanh crossing in (pi, 3 pi / 2)
    assert math.pi < t.a_c < 1.5 * math.pi
    assert abs(math.tan(t.a_c) - math.tanh(t.a_c)) <= 1e-11
    assert abs(t.alpha_crit * t.a_c * math.sqrt(2.0) - 1.0) <= 1e-13
    assert t.residual_c0 <= 1e-12
    assert t.residual_cm <= 1e-12
    assert t.residual_a_c <= 1e-12


def test_constants_frozen_values(constants):
    assert math.isclose(constants.c0, 0.833556559600968, rel_tol=1e-12)
    assert math.isclose(constants.alpha0, 1.50887956153832, rel_tol=1e-12)
    assert math.isclose(constants.cm, 1.5643765885603986, rel_tol=1e-12)
    assert math.isclose(constants.alpha_m, 1.895025455414417, rel_tol=1e-12)
    assert math.isclose(constants.a_c, 3.9266023120479208, rel_tol=1e-12)
    assert math.isclose(constants.alpha_crit, 0.1800810790074016, rel_tol=1e-12)


@pytest.mark.parametrize("alpha", [1.6, 2.0, 3.5, 8.0])
def test_branches_bracket_c0_and_hit_alpha(alpha, constants):
    b = hv.solve_catenary_branches(alpha)
    assert b.c2 < constants.c0 < b.c1
    assert abs(hv.alpha_of_c(b.c1) - alpha) <= 1e-12 * alpha
    assert abs(hv.alpha_of_c(b.c2) - alpha) <= 1e-12 * alpha
    assert b.area1 == hv.catenary_area(b.c1)
    assert b.area2 == hv.catenary_area(b.c2)
    # the flat branch always has the smaller area
    assert b.area1 < b.area2
    assert math.isclose(b.eps_hat, 1.0 / (4.0 * b.c1 ** 2), rel_tol=1e-14)


def test_branches_merge_at_threshold(constants):
    b = hv.solve_catenary_branches(constants.alpha0 + 1e-10)
    assert abs(b.c1 - constants.c0) <= 1e-4
    assert abs(b.c2 - constants.c0) <= 1e-4


def test_no_branches_below_threshold(constants):
    with pytest.raises(hv.NoSolution):
        hv.solve_catenary_branches(constants.alpha0 - 0.01)
    with pytest.raises(hv.OutOfDomain):
        hv.solve_catenary_branches(-1.0)


def test_catenary_area_closed_form_matches_quadrature():
    # the area integrand of c cosh(x/c) integrates exactly to
    # pi c^2 (sinh(2/c) + 2/c)
    for c in (0.5, 1.0, 2.0, 5.0):
        exact = math.pi * c * c * (math.sinh(2.0 / c) + 2.0 / c)
        assert math.isclose(hv.catenary_area(c), exact, rel_tol=1e-14)


def test_goldschmidt_area_is_two_disks():
    for alpha in (0.5, 1.0, 2.4):
        assert math.isclose(hv.goldschmidt_area(alpha),
                            2.0 * math.pi * alpha * alpha, rel_tol=1e-14)


def test_area_minimiser_classification(constants):
    assert hv.classify_area_minimiser(constants.alpha0 + 0.05) == "Goldschmidt"
    assert hv.classify_area_minimiser(constants.alpha_m - 0.01) == "Goldschmidt"
    assert hv.classify_area_minimiser(constants.alpha_m + 0.01) == "Catenary"
    assert hv.classify_area_minimiser(4.0) == "Catenary"


def test_classification_crossover_balances_areas(constants):
    # at alpha_m the flat catenary and the two disks have equal area
    b = hv.solve_catenary_branches(constants.alpha_m)
    assert abs(b.area1 - hv.goldschmidt_area(constants.alpha_m)) <= 1e-9


def test_reflected_branch_gaps_positive(constants):
    for delta in (0.05, 0.2, 0.6 * constants.c0):
        gaps = hv.reflected_branch_gaps(delta)
        assert gaps["alpha_gap"] > 0.0
        assert gaps["g_gap"] > 0.0


def test_reflected_branch_gaps_domain(constants):
    with pytest.raises(hv.OutOfDomain):
        hv.reflected_branch_gaps(0.0)
    with pytest.raises(hv.OutOfDomain):
        hv.reflected_branch_gaps(constants.c0)


def test_alpha_of_c_has_single_minimum(constants):
    c_grid = np.linspace(0.2, 3.0, 200)
    alphas = np.array([hv.alpha_of_c(float(c)) for c in c_grid])
    i_min = int(np.argmin(alphas))
    assert abs(c_grid[i_min] - constants.c0) <= 0.02
    assert np.all(np.diff(alphas[: i_min - 1]) < 0.0)
    assert np.all(np.diff(alphas[i_min + 1:]) > 0.0)
