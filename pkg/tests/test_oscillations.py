"""Oscillation toolkit: envelopes, phases, extrema, and sign bounds."""

from __future__ import annotations

import math

import numpy as np
import pytest

import helfrev as hv


def _random_coefficients(rng, count):
    for _ in range(count):
        A = float(rng.uniform(-2.0, 2.0))
        B = float(rng.uniform(-2.0, 2.0))
        a = float(rng.uniform(0.2, 6.0))
        if abs(A) > 1e-3 and abs(A) + abs(B) > 1e-3:
            yield A, B, a


def test_h_closed_forms_match_definition():
    rng = np.random.default_rng(31)
    x = np.linspace(0.0, 1.0, 101)
    for A, B, a in _random_coefficients(rng, 20):
        h, h1, h2 = hv.oscillation_h(A, B, a, x)
        ax = a * x
        direct = A * np.cosh(ax) * np.cos(ax) - B * np.sinh(ax) * np.sin(ax)
        assert np.max(np.abs(h - direct)) <= 1e-12 * (abs(A) + abs(B) + 1.0)
        delta = 1e-6
        hp = hv.oscillation_h(A, B, a, x + delta)[0]
        hm = hv.oscillation_h(A, B, a, x - delta)[0]
        fd = (hp - hm) / (2.0 * delta)
        scale = np.max(np.abs(h1)) + 1.0
        assert np.max(np.abs(fd - h1)) <= 1e-7 * scale


def test_h_solves_fourth_order_ode():
    # h'''' = -4 a^4 h for every cosh cos / sinh sin combination
    A, B, a = 0.7, -1.2, 2.3
    x = np.linspace(0.0, 1.0, 11)
    delta = 1e-4
    h2 = [hv.oscillation_h(A, B, a, x + k * delta)[2] for k in (-1, 0, 1)]
    h = hv.oscillation_h(A, B, a, x)[0]
    h4 = (h2[0] - 2.0 * h2[1] + h2[2]) / delta ** 2
    target = -4.0 * a ** 4 * h
    assert np.max(np.abs(h4 - target)) <= 1e-5 * (np.max(np.abs(target)) + 1.0)


def test_phase_envelope_reconstruction():
    rng = np.random.default_rng(32)
    x = np.linspace(0.0, 1.0, 101)
    for A, B, a in _random_coefficients(rng, 50):
        h, h1, _ = hv.oscillation_h(A, B, a, x)
        E, F, phi, dphi, psi, dpsi = hv.phase_functions(A, B, a, x)
        y = a * x
        scale = np.max(np.abs(h)) + 1.0
        assert np.max(np.abs(E * np.cos(y + phi) - h)) <= 1e-10 * scale
        scale1 = np.max(np.abs(h1)) + 1.0
        assert np.max(np.abs(a * F * np.cos(y + psi) - h1)) <= 1e-10 * scale1


def test_phase_derivatives_match_finite_differences():
    A, B, a = 1.1, -0.4, 1.7
    x = np.linspace(0.05, 0.6, 40)
    delta = 1e-6
    _, _, phi, dphi, psi, dpsi = hv.phase_functions(A, B, a, x)
    _, _, phi_p, _, psi_p, _ = hv.phase_functions(A, B, a, x + delta)
    _, _, phi_m, _, psi_m, _ = hv.phase_functions(A, B, a, x - delta)
    # dphi and dpsi are derivatives in y = a x
    fd_phi = (phi_p - phi_m) / (2.0 * delta) / a
    fd_psi = (psi_p - psi_m) / (2.0 * delta) / a
    assert np.max(np.abs(fd_phi - dphi)) <= 1e-7
    assert np.max(np.abs(fd_psi - dpsi)) <= 1e-7


def test_opposite_coefficients_freeze_second_phase():
    A, a = 0.9, 2.1
    x = np.linspace(0.0, 1.0, 64)
    _, _, _, _, psi, dpsi = hv.phase_functions(A, -A, a, x)
    assert np.all(dpsi == 0.0)
    assert np.max(psi) - np.min(psi) <= 1e-12


def test_phase_needs_nonzero_first_coefficient():
    with pytest.raises(hv.PhaseUndefined):
        hv.phase_functions(0.0, 1.0, 1.5, np.array([0.1]))
    report = hv.oscillation_extrema(0.0, 1.0, 1.5, 1.0)
    assert report.phases is None
    assert len(report.extrema) >= 1


def test_degenerate_and_domain_errors():
    with pytest.raises(hv.DegenerateCoefficients):
        hv.oscillation_extrema(0.0, 0.0, 1.0, 1.0)
    with pytest.raises(hv.OutOfDomain):
        hv.oscillation_extrema(1.0, 1.0, -2.0, 1.0)
    with pytest.raises(hv.OutOfDomain):
        hv.oscillation_h(1.0, 1.0, 0.0, 0.5)


def test_extrema_are_interior_critical_points():
    rng = np.random.default_rng(33)
    for A, B, a in _random_coefficients(rng, 25):
        report = hv.oscillation_extrema(A, B, a, 1.0)
        xs = [x for x, _ in report.extrema]
        assert xs[0] == 0.0
        assert all(x2 > x1 for x1, x2 in zip(xs, xs[1:]))
        assert all(0.0 <= x <= 1.0 for x in xs)
        for x_e, h_e in report.extrema:
            h, h1, _ = hv.oscillation_h(A, B, a, x_e)
            assert math.isclose(float(h), h_e,
                                rel_tol=1e-9, abs_tol=1e-9)
            if 0.0 < x_e < 1.0:
                scale = abs(A) + abs(B)
                assert abs(float(h1)) <= 1e-6 * scale * a


def test_extrema_count_matches_dense_scan():
    A, B, a = 1.0, 0.35, 5.0
    report = hv.oscillation_extrema(A, B, a, 1.0)
    x = np.linspace(0.0, 1.0, 20001)
    h1 = hv.oscillation_h(A, B, a, x)[1]
    crossings = int(np.sum(np.diff(np.sign(h1[1:-1])) != 0.0))
    interior = [x_e for x_e, _ in report.extrema if 0.0 < x_e < 1.0]
    assert len(interior) == crossings


def test_endpoint_dominant_family_identity():
    for a in (0.5, 1.0, 2.0, 3.0):
        A, B = hv.endpoint_dominant_family(a)
        assert math.isclose(A, math.sinh(a) * math.cos(a)
                            + math.cosh(a) * math.sin(a), rel_tol=1e-14)
        assert math.isclose(B, math.sinh(a) * math.cos(a)
                            - math.cosh(a) * math.sin(a), rel_tol=1e-14)
        h_end = float(hv.oscillation_h(A, B, a, 1.0)[0])
        expected = (math.sinh(a) * math.cosh(a)
                    + math.sin(a) * math.cos(a))
        assert math.isclose(h_end, expected, rel_tol=1e-12)


def test_endpoint_dominates_on_open_interval():
    rng = np.random.default_rng(34)
    x = np.linspace(0.0, 1.0, 2001)[:-1]
    for _ in range(50):
        a = float(rng.uniform(0.05, 3.0))
        A, B = hv.endpoint_dominant_family(a)
        h = hv.oscillation_h(A, B, a, x)[0]
        h_end = float(hv.oscillation_h(A, B, a, 1.0)[0])
        assert np.max(np.abs(h)) < abs(h_end)


def test_extremum_magnitudes_always_grow():
    # |h| strictly increases along the extremum list for every
    # coefficient pair; the flag verifies the growth lemma
    rng = np.random.default_rng(35)
    for A, B, a in _random_coefficients(rng, 40):
        report = hv.oscillation_extrema(A, B, a, 1.0)
        assert report.abs_monotone
        mags = [abs(h) for _, h in report.extrema]
        assert all(m2 > m1 for m1, m2 in zip(mags, mags[1:]))


def test_sign_inequality_regimes():
    x = np.linspace(1e-3, 1.0, 400, endpoint=False)
    for a in (1.0, 2.0, 3.9):
        assert all(hv.sign_inequality(a, float(t * a)) for t in x)
    for a in (4.0, 5.0):
        assert not all(hv.sign_inequality(a, float(t * a)) for t in x)


def test_sign_inequality_domain():
    with pytest.raises(hv.OutOfDomain):
        hv.sign_inequality(-1.0, 0.5)
    with pytest.raises(hv.OutOfDomain):
        hv.sign_inequality(1.0, 1.5)


def test_tanh_tan_ratio_values_and_poles():
    assert math.isclose(hv.tanh_tan_ratio(1.0),
                        math.tanh(1.0) / math.tan(1.0), rel_tol=1e-14)
    xs = np.linspace(0.05, 1.5, 60)
    vals = [hv.tanh_tan_ratio(float(t)) for t in xs]
    assert all(v2 < v1 for v1, v2 in zip(vals, vals[1:]))
    for pole in (math.pi, 2.0 * math.pi):
        with pytest.raises(hv.PoleAtMultipleOfPi):
            hv.tanh_tan_ratio(pole)


def test_phase_slowdown_crossing_values():
    assert hv.phase_slowdown_crossing(-2.0) == pytest.approx(
        math.sqrt(1.0 / 6.0), rel=1e-12)
    for K in (-1.0, -0.5, 2.0):
        assert hv.phase_slowdown_crossing(K) is None
    for K in (-1.5, -10.0):
        y_star = hv.phase_slowdown_crossing(K)
        assert 0.0 < y_star < 1.0 / math.sqrt(2.0)
    with pytest.raises(hv.OutOfDomain):
        hv.phase_slowdown_crossing(math.nan)
    with pytest.raises(hv.OutOfDomain):
        hv.phase_slowdown_crossing(0.0)


def test_phase_advance_changes_sign_at_crossing():
    for K in (-1.5, -2.0, -4.0):
        y_star = hv.phase_slowdown_crossing(K)
        assert hv.phase_advance(K, y_star - 0.05) < 0.0
        assert hv.phase_advance(K, y_star + 0.05) > 0.0
