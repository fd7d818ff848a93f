"""Energy-decreasing surgery: catenary gluing and cylinder insertion."""

from __future__ import annotations

import numpy as np
import pytest

import helfrev as hv
from conftest import random_admissible

ALPHA = 2.0
EPSILON = 1.0


def _energy(curve):
    return hv.helfrich(curve, EPSILON).helfrich


def test_cylinder_passes_through_unchanged():
    cyl = hv.cylinder_profile(ALPHA, hv.Grid.uniform(24))
    for op in (hv.glue_catenary, hv.insert_cylinder):
        out = op(cyl, EPSILON)
        assert np.array_equal(out.values, cyl.values)
        assert np.array_equal(out.derivatives, cyl.derivatives)


def test_out_of_regime_raises():
    rng = np.random.default_rng(41)
    low_alpha = random_admissible(1.2, hv.Grid.uniform(24), rng, 0.2)
    shallow = random_admissible(ALPHA, hv.Grid.uniform(24), rng, 0.2)
    for op in (hv.glue_catenary, hv.insert_cylinder):
        with pytest.raises(hv.OutOfDomain):
            op(low_alpha, EPSILON)
        with pytest.raises(hv.OutOfDomain):
            op(shallow, 0.05)


def test_operations_never_raise_energy():
    rng = np.random.default_rng(42)
    grid = hv.Grid.uniform(48)
    for _ in range(30):
        curve = random_admissible(ALPHA, grid, rng, 0.8)
        before = _energy(curve)
        glued = hv.glue_catenary(curve, EPSILON)
        mid = _energy(glued)
        flat = hv.insert_cylinder(glued, EPSILON)
        after = _energy(flat)
        slack = 1e-9 * max(1.0, abs(before))
        assert mid <= before + slack
        assert after <= mid + slack


def test_outputs_stay_admissible_and_symmetric():
    rng = np.random.default_rng(43)
    grid = hv.Grid.uniform(48)
    for _ in range(10):
        curve = random_admissible(ALPHA, grid, rng, 0.8)
        for op in (hv.glue_catenary, hv.insert_cylinder):
            out = op(curve, EPSILON)
            assert out.alpha == ALPHA
            assert out.is_admissible
            assert out.values[-1] == ALPHA
            assert out.derivatives[-1] == 0.0
            assert hv.mirror_consistency_check(out)


def test_insert_cylinder_levels_the_dip():
    # a deep central dip gets replaced by a flat run at the minimum
    grid = hv.Grid.uniform(64)
    x = grid.nodes
    depth = 0.8
    values = ALPHA - depth * (1.0 - x * x) ** 2
    derivs = depth * 4.0 * x * (1.0 - x * x)
    curve = hv.build_profile(ALPHA, grid, values, derivs)
    out = hv.insert_cylinder(curve, EPSILON)
    xs = np.linspace(0.0, 1.0, 1001)
    u_out, du_out, _ = out.evaluate(xs)
    u_in = curve.evaluate(xs)[0]
    assert _energy(out) <= _energy(curve) + 1e-9
    # the new profile never dips below the old minimum and is flat
    # near the centre
    assert np.min(u_out) >= np.min(u_in) - 1e-9
    centre = xs <= 0.05
    assert np.max(np.abs(du_out[centre])) <= 1e-9


def test_glue_catenary_caps_steep_slopes():
    # a profile steeper than the flat catenary gets its outer part
    # replaced; the result obeys the catenary slope ceiling
    b = hv.solve_catenary_branches(ALPHA)
    grid = hv.Grid.uniform(64)
    x = grid.nodes
    bump = 0.5 * np.sin(np.pi * x) ** 2
    d_bump = 0.5 * np.pi * np.sin(2.0 * np.pi * x) * np.sin(np.pi * x) ** 0
    values = ALPHA - 0.5 + 0.5 * x ** 2
    derivs = x.copy()
    curve = hv.build_profile(ALPHA, grid, values, derivs)
    out = hv.glue_catenary(curve, EPSILON)
    xs = np.linspace(0.0, 1.0, 2001)
    _, du_out, _ = out.evaluate(xs)
    ceiling = np.sinh(xs / b.c1)
    assert np.all(du_out <= ceiling + 1e-7)
    assert _energy(out) <= _energy(curve) + 1e-9


def test_negative_epsilon_rejected():
    cyl = hv.cylinder_profile(ALPHA, hv.Grid.uniform(16))
    for op in (hv.glue_catenary, hv.insert_cylinder):
        with pytest.raises(hv.OutOfDomain):
            op(cyl, -1.0)
