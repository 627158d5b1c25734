import math

import numpy as np
import pytest

from dswlab import hodograph, hydro, onephase, whitham
from dswlab.config import RunConfig
from dswlab.errors import DomainError, OutOfRegionError
from dswlab.models import CubicBreakData, ModulationState

UNIT = CubicBreakData(0.0, 1.0)
BREAKS = [CubicBreakData(0.0, 1.0), CubicBreakData(0.5, 2.0), CubicBreakData(1.0, 2.0)]


def residuals(ms, x, t, d):
    v = whitham.whitham_velocities(ms)
    return (
        x - v[2] * t - hodograph.omega(3, ms, d),
        x - v[3] * t - hodograph.omega(4, ms, d),
    )


def test_coefficients():
    assert hodograph.hodograph_coefficients(UNIT).astuple() == pytest.approx(
        (-1.0, 2.0, -1.6, 16.0 / 35.0)
    )
    assert hodograph.hodograph_coefficients(CubicBreakData(0.0, 0.0)).astuple() == pytest.approx(
        (0.0, 0.0, 0.0, 16.0 / 35.0)
    )
    c = hodograph.hodograph_coefficients(CubicBreakData(1.0, 2.0))
    assert c.c2 == pytest.approx(-24.0 / 7.0)
    assert c.c0 == pytest.approx(-407.0 / 35.0)


@pytest.mark.parametrize("d", BREAKS)
def test_generating_function_vanishes_at_breaking_point(d):
    ms = ModulationState(d.l_minus, d.l_plus, d.l_plus, d.l_plus)
    w, _ = hodograph.generating_function(ms, hodograph.hodograph_coefficients(d))
    assert w == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("d", BREAKS)
def test_soliton_limit_reproduces_initial_cubic(d):
    for l4 in (d.l_plus + 0.5, d.l_plus + 1.0, d.l_plus + 3.0):
        w3, w4 = hodograph.omega_soliton_limit(l4, d)
        assert w4 == pytest.approx((l4 - d.l_plus) ** 3, rel=1e-12, abs=1e-12)
        ms = ModulationState(d.l_minus, d.l_plus, d.l_plus, l4)
        assert hodograph.omega(3, ms, d) == pytest.approx(w3)
        assert hodograph.omega(4, ms, d) == pytest.approx(w4)


def test_gradient_matches_finite_differences(rng):
    coeffs = hodograph.hodograph_coefficients(CubicBreakData(0.25, 1.0))
    h = 1e-6
    for l in np.sort(rng.uniform(0.0, 3.0, (20, 4)), axis=1):
        _, grad = hodograph.generating_function(ModulationState(*l), coeffs)
        for i in range(4):
            up, down = l.copy(), l.copy()
            up[i] += h
            down[i] -= h
            fd = (
                hodograph.generating_function(ModulationState(*np.sort(up)), coeffs)[0]
                - hodograph.generating_function(ModulationState(*np.sort(down)), coeffs)[0]
            ) / (2 * h)
            assert grad[i] == pytest.approx(fd, rel=1e-6, abs=1e-7)


def test_omega_with_numerical_wavelength_derivative():
    d = CubicBreakData(0.25, 1.0)
    l = np.array([0.25, 1.0, 2.25, 4.0])
    w, grad = hodograph.generating_function(ModulationState(*l), hodograph.hodograph_coefficients(d))
    h = 1e-6
    for i in range(4):
        up, down = l.copy(), l.copy()
        up[i] += h
        down[i] -= h
        dlog = (
            math.log(onephase.modulus_and_wavelength(ModulationState(*up))[1])
            - math.log(onephase.modulus_and_wavelength(ModulationState(*down))[1])
        ) / (2 * h)
        expected = w - grad[i] / dlog
        assert hodograph.omega(i + 1, ModulationState(*l), d) == pytest.approx(expected, rel=1e-6)


def test_omega_index_is_checked():
    with pytest.raises(DomainError):
        hodograph.omega(0, ModulationState(0.0, 1.0, 2.0, 3.0), UNIT)


def test_characteristic_compatibility(rng):
    # d_j omega_i / (omega_i - omega_j) == d_j v_i / (v_i - v_j)
    d = CubicBreakData(0.25, 1.0)
    h = 1e-6
    checked = 0
    for l in np.sort(rng.uniform(0.0, 4.0, (50, 4)), axis=1):
        if min(np.diff(l)) < 0.3:
            continue
        ms = ModulationState(*l)
        w = [hodograph.omega(i + 1, ms, d) for i in range(4)]
        v = whitham.whitham_velocities_general(ms)
        for i, j in ((2, 3), (3, 2), (2, 0), (3, 1)):
            up, down = l.copy(), l.copy()
            up[j] += h
            down[j] -= h
            dw = (hodograph.omega(i + 1, ModulationState(*up), d)
                  - hodograph.omega(i + 1, ModulationState(*down), d)) / (2 * h)
            dv = (whitham.whitham_velocities_general(ModulationState(*up))[i]
                  - whitham.whitham_velocities_general(ModulationState(*down))[i]) / (2 * h)
            assert dw / (w[i] - w[j]) == pytest.approx(dv / (v[i] - v[j]), rel=1e-5, abs=1e-7)
        checked += 1
    assert checked > 0


def test_soliton_edge_law():
    assert hodograph.soliton_edge_l4(1.0, UNIT) == pytest.approx(9.39046, abs=2e-5)
    assert hodograph.soliton_edge_l4(0.0, UNIT) == 1.0


@pytest.mark.parametrize("d", BREAKS)
@pytest.mark.parametrize("t", [0.1, 0.3, 1.0, 3.0])
def test_edges_solve_modulation_relations(d, t):
    x_left, x_right, l4 = hodograph.edge_laws(t, d)
    assert x_left < x_right

    soliton = ModulationState(d.l_minus, d.l_plus, d.l_plus, l4)
    w3, w4 = hodograph.omega_soliton_limit(l4, d)
    v = whitham.whitham_velocities(soliton)
    assert x_right - v[3] * t == pytest.approx(w4, rel=1e-10)
    assert x_right - v[2] * t == pytest.approx(w3, rel=1e-9, abs=1e-9)

    harmonic = hodograph.solve_cubic_modulation(x_left, t, d)
    assert harmonic.l3 == harmonic.l4
    assert hodograph.harmonic_edge_time(harmonic.l4, d) == pytest.approx(t, rel=1e-10)
    for r in residuals(harmonic, x_left, t, d):
        assert r == pytest.approx(0.0, abs=1e-9 * max(1.0, abs(x_left)))


def test_harmonic_edge_numbers():
    t = hodograph.harmonic_edge_time(2.0, UNIT)
    assert t == pytest.approx(0.134638, abs=1e-6)
    assert whitham.harmonic_velocity_upper(0.0, 1.0, 2.0) == pytest.approx(-45.5)
    assert hodograph.harmonic_edge_position(2.0, t, UNIT) == pytest.approx(-3.8403, abs=1e-4)
    x_left, _, _ = hodograph.edge_laws(t, UNIT)
    assert x_left == pytest.approx(-3.8403, abs=1e-4)


def test_breaking_instant():
    assert hodograph.edge_laws(0.0, UNIT) == (0.0, 0.0, 1.0)
    ms = hodograph.solve_cubic_modulation(0.0, 0.0, UNIT)
    assert ms.invariants == (0.0, 1.0, 1.0, 1.0)
    with pytest.raises(OutOfRegionError):
        hodograph.solve_cubic_modulation(0.5, 0.0, UNIT)
    with pytest.raises(DomainError):
        hodograph.edge_laws(-1.0, UNIT)
    with pytest.raises(DomainError):
        hodograph.solve_cubic_modulation(0.0, -1.0, UNIT)


@pytest.mark.parametrize("d", BREAKS)
@pytest.mark.parametrize("t", [0.3, 1.0])
def test_interior_residuals_and_ordering(d, t):
    x_left, x_right, l4_right = hodograph.edge_laws(t, d)
    c_left = hodograph.solve_cubic_modulation(x_left, t, d).l4
    states = []
    for x in np.linspace(x_left, x_right, 11)[1:-1]:
        ms = hodograph.solve_cubic_modulation(x, t, d)
        assert ms.l1 == d.l_minus and ms.l2 == d.l_plus
        assert d.l_plus <= ms.l3 <= ms.l4
        assert c_left - 1e-9 <= ms.l4 <= l4_right + 1e-9
        for r in residuals(ms, x, t, d):
            assert r == pytest.approx(0.0, abs=hodograph.RESIDUAL_TOLERANCE * max(1.0, abs(x_left)))
        states.append(ms)
    assert all(a.l3 >= b.l3 for a, b in zip(states, states[1:]))
    assert all(a.l4 <= b.l4 for a, b in zip(states, states[1:]))


def test_interior_approaches_edges():
    t = 1.0
    x_left, x_right, l4_right = hodograph.edge_laws(t, UNIT)
    width = x_right - x_left
    near_soliton = hodograph.solve_cubic_modulation(x_right - 1e-4 * width, t, UNIT)
    assert near_soliton.l3 == pytest.approx(1.0, rel=1e-2)
    assert near_soliton.l4 == pytest.approx(l4_right, rel=1e-2)
    # l4 - l3 opens like the square root of the distance to the harmonic edge
    gaps = []
    for offset in (1e-4, 1e-6):
        ms = hodograph.solve_cubic_modulation(x_left + offset * width, t, UNIT)
        gap = (ms.l4 - ms.l3) / ms.l4
        assert 0.0 < gap < 3.0 * math.sqrt(offset)
        gaps.append(gap)
    assert 5.0 < gaps[0] / gaps[1] < 20.0


def test_outside_fan_is_rejected():
    x_left, x_right, _ = hodograph.edge_laws(1.0, UNIT)
    for x in (x_left - 1.0, x_right + 1.0):
        with pytest.raises(OutOfRegionError):
            hodograph.solve_cubic_modulation(x, 1.0, UNIT)


def test_dispersionless_profile():
    assert hodograph.dispersionless_profile(8.0, 0.0, UNIT).l_plus == pytest.approx(3.0)
    t = 1.0
    x_left, x_right, l4_right = hodograph.edge_laws(t, UNIT)
    pair = hodograph.dispersionless_profile(x_right + 1e-9, t, UNIT)
    assert pair.l_plus == pytest.approx(l4_right, rel=1e-6)

    x = x_right + 25.0
    pair = hodograph.dispersionless_profile(x, t, UNIT)
    assert x - hydro.v_plus(0.0, pair.l_plus) * t == pytest.approx((pair.l_plus - 1.0) ** 3)

    with pytest.raises(OutOfRegionError):
        hodograph.dispersionless_profile(0.5 * (x_left + x_right), t, UNIT)
    for x in (x_left - 1e-9, -1e6):
        assert hodograph.dispersionless_profile(x, t, UNIT).l_plus == 1.0
    assert hodograph.dispersionless_profile(-8.0, 0.0, UNIT).l_plus == 1.0
    assert hodograph.dispersionless_profile(-50.0, -1.0, UNIT).l_plus == 1.0


def test_initial_state():
    rho, nu = hodograph.initial_state([-1e3, 0.0, 8.0], UNIT)
    assert rho == pytest.approx([1.0, 1.0, 3.0])
    assert nu == pytest.approx([0.5, 0.5, 1.5])
    rho, _ = hodograph.initial_state([-1.0, 1.0], CubicBreakData(0.25, 1.0))
    assert rho == pytest.approx([2.25, (math.sqrt(2.0) + 0.5) ** 2])


def test_cubic_profile():
    t = 1.0
    x_left, x_right, _ = hodograph.edge_laws(t, UNIT)
    xs = np.linspace(x_left - 20.0, x_right + 20.0, 41)
    out = hodograph.cubic_profile(xs, t, UNIT, RunConfig(threads=2))
    inside = (xs >= x_left) & (xs <= x_right)
    assert np.all(np.isfinite(out["l3"][inside]))
    assert np.all(np.isnan(out["l3"][~inside]))
    assert np.all(np.isfinite(out["l_plus"][xs > x_right]))
    np.testing.assert_allclose(out["l_plus"][xs < x_left], 1.0)
    for column in ("rho_upper", "rho_lower"):
        values = out[column][inside]
        assert np.all(np.isfinite(values)) and np.all(values >= -1e-12)
    phase = out["phase"][inside]
    assert np.all(np.diff(phase[::-1]) <= 0.0)

    with pytest.raises(DomainError):
        hodograph.cubic_profile(xs, 0.0, UNIT)
