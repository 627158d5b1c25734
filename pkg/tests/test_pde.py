import math

import numpy as np
import pytest

from dswlab import hodograph, hydro, onephase, pde, riemann
from dswlab.config import RunConfig, SolverConfig
from dswlab.errors import DomainError, InstabilityError, ResolutionError
from dswlab.models import (
    CubicBreakData,
    DispersionlessPair,
    FieldState,
    Grid,
    Interval,
    ModulationState,
    MonotonicityBranch,
    RegionKind,
    StepData,
)

SMALL = SolverConfig(n_points=256, length=64.0)


def commensurate_grid(k=1.0, wavelengths=16, n_points=256):
    return Grid(n_points, 2.0 * math.pi * wavelengths / k)


def test_make_grid_defaults():
    grid = pde.make_grid()
    assert grid.n_points == 4096
    assert grid.length == 400.0
    assert grid.spacing == pytest.approx(400.0 / 4096)
    assert pde.make_grid(SMALL).n_points == 256


def test_plane_wave_must_fit_the_domain():
    grid = commensurate_grid()
    fs = pde.plane_wave(grid, 1.0, 0.5)
    np.testing.assert_allclose(fs.rho, 0.25)
    with pytest.raises(ResolutionError):
        pde.plane_wave(grid, 1.03, 0.5)


def test_constant_step_is_a_plane_wave():
    grid = commensurate_grid()
    sd = StepData.from_values(0.81, 1.0, 0.81, 1.0)
    fs = pde.init_from_step(grid, sd, 2.0)
    np.testing.assert_allclose(fs.u, 0.9 * np.exp(1j * grid.nodes), atol=1e-10)


def test_step_without_flow_is_real():
    grid = pde.make_grid()
    sd = StepData.from_values(2.0, 0.0, 1.0, 0.0)
    fs = pde.init_from_step(grid, sd, 0.5)
    assert np.all(fs.u.imag == 0.0)
    assert np.all(fs.u.real > 0.0)
    expected = 2.0 - pde.step_shape(grid, 0.5)
    np.testing.assert_allclose(fs.rho, expected, rtol=1e-12)
    assert fs.mass == pytest.approx(np.sum(expected) * grid.spacing, rel=1e-12)
    x = grid.nodes
    assert fs.rho[np.argmin(np.abs(x + 50.0))] == pytest.approx(2.0)
    assert fs.rho[np.argmin(np.abs(x - 50.0))] == pytest.approx(1.0)


def test_step_phase_closes_periodically():
    grid = pde.make_grid()
    sd = StepData.from_values(2.0, 0.3, 1.0, 0.1)
    fs = pde.init_from_step(grid, sd, 0.5)
    jump = np.angle(fs.u[0] * np.conj(fs.u[-1]))
    assert abs(jump) < 0.1


def test_narrow_smoothing_is_rejected():
    grid = pde.make_grid()
    with pytest.raises(ResolutionError):
        pde.init_from_step(grid, StepData.from_values(2.0, 0.0, 1.0, 0.0), 0.2)


def test_profile_is_mirrored_outside_the_primary_half():
    grid = Grid(256, 64.0)
    x = grid.nodes
    rho = 1.0 + 0.5 * np.tanh(x / 4.0)
    fs = pde.init_from_profile(grid, rho, np.zeros_like(x))
    far = x > 16.0
    mirrored = 1.0 + 0.5 * np.tanh((32.0 - x[far]) / 4.0)
    np.testing.assert_allclose(fs.rho[far], mirrored, rtol=1e-12)
    np.testing.assert_allclose(fs.rho[np.abs(x) <= 16.0], rho[np.abs(x) <= 16.0], rtol=1e-12)
    with pytest.raises(DomainError):
        pde.init_from_profile(grid, rho[:-1], np.zeros(255))


def test_constant_state_is_stationary():
    grid = Grid(256, 64.0)
    fs = FieldState(grid, np.full(256, 1.2 + 0.0j))
    out = pde.evolve(fs, 0.5, SMALL)
    assert out.time == pytest.approx(0.5)
    np.testing.assert_allclose(out.u, 1.2, atol=1e-12)


@pytest.mark.parametrize("k", [1.0, 2.0])
@pytest.mark.parametrize("amp", [0.5, 1.0])
def test_plane_wave_dispersion(k, amp):
    result = pde.dispersion_test(k, amp)
    assert result["omega_analytic"] == pytest.approx(pde.dispersion_relation(k, amp))
    assert result["rel_error"] < 1e-6
    assert result["mass_drift"] < 1e-10


def test_linear_limit():
    result = pde.dispersion_test(1.0, 0.0)
    assert result["omega_analytic"] == -1.0
    assert result["omega_measured"] == pytest.approx(-1.0, rel=1e-6)


def test_mass_is_conserved():
    grid = Grid(256, 64.0)
    x = grid.nodes
    bump = np.exp(-x * x / 16.0)
    fs = pde.init_from_profile(grid, 1.0 + 0.1 * bump, 0.05 * x * bump)
    out = pde.evolve(fs, 2.0, SMALL)
    assert out.mass == pytest.approx(fs.mass, rel=1e-8)


def test_blow_up_raises_after_retry(caplog):
    grid = Grid(256, 64.0)
    fs = pde.init_from_step(grid, StepData.from_values(2.0, 0.0, 1.0, 0.0), 1.0)
    with pytest.raises(InstabilityError) as info:
        pde.evolve(fs, 5.0, SMALL.replace(dt=0.5, retries=1))
    assert set(info.value.diagnostics) == {"time", "step", "max_u", "dt"}
    assert info.value.diagnostics["dt"] == pytest.approx(0.25)
    assert "restarting" in caplog.text


def test_time_step_rule():
    grid = pde.make_grid()
    config = SolverConfig()
    dx = grid.spacing
    kd = config.dealias_fraction * math.pi / dx
    assert pde.time_step(grid, config, 0.0) == pytest.approx(min(0.4 * dx, dx**3 * kd))
    assert pde.time_step(grid, config, 4.0) < pde.time_step(grid, config, 1.0)
    assert pde.time_step(grid, config.replace(dt=1e-3), 4.0) == 1e-3


def test_evolve_to_snapshots():
    grid = commensurate_grid()
    fs = pde.plane_wave(grid, 1.0, 0.5)
    snaps = pde.evolve_to(fs, [0.2, 0.1], SMALL)
    assert [s.time for s in snaps] == pytest.approx([0.1, 0.2])
    with pytest.raises(DomainError):
        pde.evolve_to(snaps[-1], [0.1], SMALL)
    with pytest.raises(DomainError):
        pde.evolve(fs, -1.0)


def test_measure_plane_wave():
    grid = commensurate_grid()
    data = pde.measure(pde.plane_wave(grid, 1.0, 0.5))
    assert data["edges"] is None
    assert not np.any(data["vacuum"])
    np.testing.assert_allclose(data["nu"], 1.0, atol=1e-10)
    assert data["mass"] == pytest.approx(0.25 * grid.length)


def test_vacuum_cells_have_no_velocity():
    grid = Grid(256, 64.0)
    u = np.where(np.abs(grid.nodes) < 2.0, 0.0, 1.0) + 0j
    data = pde.measure(FieldState(grid, u))
    assert np.all(data["vacuum"] == (np.abs(grid.nodes) < 2.0))
    assert np.all(np.isnan(data["nu"][data["vacuum"]]))


def test_synthetic_cnoidal_edges():
    grid = pde.make_grid()
    x = grid.nodes
    wave = onephase.wave_params(ModulationState(0.25, 1.0, 2.25, 4.0), Interval.LOW)
    _, wavelength = onephase.modulus_and_wavelength(ModulationState(0.25, 1.0, 2.25, 4.0))
    x0, x1 = -20.0, -20.0 + 10 * wavelength
    inside = (x >= x0) & (x <= x1)
    rho = np.full_like(x, wave.rho1)
    rho[inside] = onephase.density_profile(x[inside] - x0, wave)
    data = pde.measure(FieldState(grid, np.sqrt(rho)), jump=wave.rho2 - wave.rho1)
    left, right = data["edges"]
    assert left == pytest.approx(x0, abs=3 * grid.spacing)
    assert right == pytest.approx(x1, abs=3 * grid.spacing)


def test_monotone_ramp_is_not_an_oscillation():
    x = np.linspace(-50.0, 50.0, 1024, endpoint=False)
    rho = 1.0 + 0.5 * np.clip(x / 10.0, -1.0, 1.0)
    assert pde.oscillation_edges(x, rho, 1.0, SolverConfig(), (-25.0, 25.0)) is None


def test_departure_edges_and_plateau():
    x = np.linspace(-10.0, 10.0, 2001)
    rho = np.interp(x, [-4.0, -2.0, 3.0, 5.0], [2.0, 1.5, 1.5, 1.0])
    left, right = pde.departure_edges(x, rho, 2.0, 1.0, 0.01)
    assert left == pytest.approx(-4.0, abs=0.05)
    assert right == pytest.approx(5.0, abs=0.05)
    assert pde.plateau_value(x, rho, -2.0, 3.0) == pytest.approx(1.5)
    assert math.isnan(pde.plateau_value(x, rho, 20.0, 30.0))


def step(left, right):
    upper = MonotonicityBranch.UPPER
    return StepData(
        hydro.state_from_invariants(DispersionlessPair(*left), upper),
        hydro.state_from_invariants(DispersionlessPair(*right), upper),
    )


CASE_B = ((0.5, 2.0), (0.25, 1.0))
CASE_C = ((0.25, 2.25), (1.0, 1.44))


def test_ramp_edge_extrapolates_to_the_foot():
    x = np.linspace(-10.0, 10.0, 2001)
    rho = np.interp(x, [-4.0, -2.0, 3.0, 5.0], [2.0, 1.5, 1.5, 1.0])
    assert pde.ramp_edge(x, rho, -8.0, 0.0, 2.0, 0.5) == pytest.approx(-4.0, abs=1e-9)
    assert pde.ramp_edge(x, rho, 8.0, 0.0, 1.0, 0.5) == pytest.approx(5.0, abs=1e-9)
    assert pde.ramp_edge(x, rho, -8.0, -5.0, 2.0, 0.5) is None
    assert pde.crossings(x, rho, 0.0, -8.0, 1.5, [0.25]) == pytest.approx([-3.0])


def test_leading_soliton_takes_the_outer_strong_dip():
    x = np.linspace(-50.0, 50.0, 1001)
    rho = np.ones_like(x)
    for centre, depth in ((-10.0, 0.8), (-6.0, 0.6), (-3.0, 0.3)):
        rho -= depth / np.cosh((x - centre) / 0.7) ** 2
    rho += 2.0 * np.exp(-((x - 40.0) ** 2))
    assert pde.leading_soliton(x, rho, (-15.0, 0.0), "left") == pytest.approx(-10.0, abs=0.05)
    assert pde.leading_soliton(x, rho, (-15.0, 0.0), "right") == pytest.approx(-6.0, abs=0.05)
    assert pde.leading_soliton(x, rho, (-15.0, 45.0), "left") == pytest.approx(40.0, abs=0.05)
    assert pde.leading_soliton(x, np.ones_like(x), (-15.0, 0.0), "left") is None


def test_window_follows_the_local_wavelength():
    x = np.linspace(-50.0, 50.0, 2001)
    rho = 1.0 + 0.3 * np.cos(2.0 * math.pi * x / 2.5) * (np.abs(x) < 20.0)
    assert pde.local_wavelength(x, rho, 0.05) == pytest.approx(2.5, abs=0.05)
    assert pde.local_wavelength(x, rho, 0.05, (25.0, 45.0)) is None
    left, right = pde.oscillation_edges(x, rho, 0.6)
    assert left == pytest.approx(-20.0, abs=0.3)
    assert right == pytest.approx(20.0, abs=0.3)


def test_pattern_comparison_ignores_structures_outside_the_pattern():
    pattern = riemann.build_pattern(step(*CASE_C), RunConfig(threads=2))
    assert [r.kind for r in pattern.regions] == [
        RegionKind.PLATEAU,
        RegionKind.RAREFACTION,
        RegionKind.PLATEAU,
        RegionKind.CNOIDAL_DSW,
        RegionKind.PLATEAU,
    ]
    grid = pde.make_grid()
    x, t = grid.nodes, 2.0
    profile = riemann.build_profile(pattern, x, t, RunConfig(threads=2))
    rho = profile["rho_" + pattern.physical]
    far = x > 60.0
    rho[far] += 3.0 * np.sin(x[far]) ** 2
    report = pde.compare_with_pattern(pattern, FieldState(grid, np.sqrt(rho), t))
    assert report["bounds"][1] < 60.0
    edges = report["edges"]
    assert set(edges) == {"leftmost", "edge_1", "edge_2", "rightmost", "soliton_3"}
    for name in ("leftmost", "edge_1"):
        assert edges[name]["span_error"] < 0.02
    soliton = edges["soliton_3"]
    assert soliton["analytic"] == pytest.approx(t * pattern.regions[3].left_speed)
    assert soliton["measured"] == pytest.approx(soliton["analytic"], abs=2 * grid.spacing)
    assert report["plateaus"]
    for plateau in report["plateaus"]:
        assert plateau["rel_error"] < 1e-9


def low_modes(fs, count=10):
    c = np.fft.fft(fs.u) / fs.grid.n_points
    return np.concatenate((c[: count + 1], c[-count:]))


def test_spatial_resolution_converges_spectrally():
    final = {}
    for n in (32, 64, 128, 256):
        grid = Grid(n, 64.0)
        x = grid.nodes
        fs = FieldState(grid, np.sqrt(1.0 + 0.2 * np.exp(-x * x / 8.0)))
        config = SolverConfig(n_points=n, length=64.0, dt=1e-3)
        final[n] = low_modes(pde.evolve(fs, 1.0, config))
    errors = [np.max(np.abs(final[n] - final[256])) for n in (32, 64, 128)]
    assert errors[1] < 0.05 * errors[0]
    assert errors[2] < 0.05 * errors[1]
    assert errors[2] < 1e-9


@pytest.mark.slow
def test_mass_is_conserved_at_reference_resolution():
    fs = pde.init_from_step(pde.make_grid(), step(*CASE_B))
    for snap in pde.evolve_to(fs, [1.0, 2.0, 3.0]):
        assert snap.mass == pytest.approx(fs.mass, rel=1e-8)


@pytest.mark.slow
def test_two_rarefactions_against_pde():
    sd = step(*CASE_B)
    pattern = riemann.build_pattern(sd, RunConfig(threads=2))
    fs = pde.evolve(pde.init_from_step(pde.make_grid(), sd), 2.0)
    report = pde.compare_with_pattern(pattern, fs)
    edges = report["edges"]
    assert set(edges) == {"leftmost", "edge_1", "edge_2", "rightmost"}
    for entry in edges.values():
        assert entry["span_error"] <= 0.05
    assert report["plateaus"]
    for plateau in report["plateaus"]:
        assert plateau["rel_error"] < 0.05


@pytest.mark.slow
def test_rarefaction_and_dsw_against_pde():
    sd = step(*CASE_C)
    pattern = riemann.build_pattern(sd, RunConfig(threads=2))
    fs = pde.evolve(pde.init_from_step(pde.make_grid(), sd), 2.0)
    report = pde.compare_with_pattern(pattern, fs)
    edges = report["edges"]
    assert edges["soliton_3"]["rel_error"] < 0.1
    for name in ("leftmost", "edge_1"):
        assert edges[name]["span_error"] <= 0.05
    for plateau in report["plateaus"]:
        assert plateau["rel_error"] < 0.05


@pytest.mark.slow
def test_contact_dsw_against_pde():
    pair = DispersionlessPair(1.0, 2.0)
    sd = StepData(
        hydro.state_from_invariants(pair, MonotonicityBranch.UPPER),
        hydro.state_from_invariants(pair, MonotonicityBranch.LOWER),
    )
    pattern = riemann.build_pattern(sd, RunConfig(threads=2))
    assert [r.kind for r in pattern.regions].count(RegionKind.CONTACT_DSW) == 1
    fs = pde.evolve(pde.init_from_step(pde.make_grid(), sd), 2.0)
    report = pde.compare_with_pattern(pattern, fs)
    left = -1.5 * (5.0 + 2.0 * 2.0 + 4.0)
    right = -1.5 * (1.0 - 2.0) ** 2
    assert report["edges"]["leftmost"]["analytic"] == pytest.approx(2.0 * left)
    assert report["edges"]["rightmost"]["analytic"] == pytest.approx(2.0 * right)
    for name in ("leftmost", "rightmost"):
        assert report["edges"][name]["span_error"] < 0.1


@pytest.mark.slow
def test_cubic_breaking_against_pde():
    d = CubicBreakData(0.25, 1.0)
    config = SolverConfig()
    fs = pde.init_from_cubic(pde.make_grid(config), d, config.smoothing_width)
    report = pde.compare_with_cubic(d, pde.evolve(fs, 0.3, config), config)
    for name in ("x_left", "x_right"):
        assert report["edges"][name]["rel_error"] < 0.1


def test_cubic_initial_data_follows_the_cube_root():
    grid = Grid(1024, 128.0)
    d = CubicBreakData(0.0, 1.0)
    fs = pde.init_from_cubic(grid, d, None)
    x = grid.nodes
    core = np.abs(x) < 16.0
    rho, _ = hodograph.initial_state(x[core], d)
    np.testing.assert_allclose(fs.rho[core], rho, rtol=1e-12)
    np.testing.assert_allclose(fs.rho[x < 0.0], 1.0, rtol=1e-12)


def test_cubic_comparison_needs_a_later_snapshot():
    grid = Grid(256, 64.0)
    fs = pde.init_from_cubic(grid, CubicBreakData(0.0, 1.0), 1.0)
    with pytest.raises(DomainError):
        pde.compare_with_cubic(CubicBreakData(0.0, 1.0), fs)
