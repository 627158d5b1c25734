"""Pseudo-spectral integration of the field equation

    u_t + u_xxx + 3/2 i |u|^2 u_xx - 3/4 |u|^4 u_x + 3/2 i u_x^2 conj(u) = 0

on a periodic grid. The linear term is integrated exactly through an
integrating factor, the nonlinear terms with four explicit stages and
dealiasing.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, ndimage

from . import hodograph, hydro, riemann
from .config import SolverConfig
from .errors import DomainError, InstabilityError, ResolutionError
from .models.cubic import CubicBreakData
from .models.field import FieldState, Grid
from .models.pattern import Family, Region, RegionKind, StepData, WavePattern
from .models.state import DispersionlessPair
from .types import ComplexArray, RealArray

log = logging.getLogger(__name__)

#: Headroom on the initial peak density when picking the time step.
DENSITY_HEADROOM = 2.0

#: Sliding window, in length units, when no local wavelength can be measured.
FALLBACK_WINDOW = 4.0

#: Departure levels, as fractions of a fan's density change, extrapolated to its foot.
RAMP_LEVELS = (0.1, 0.3)

_CHECK_EVERY = 16
_DISPERSION_CHUNKS = 8


def make_grid(config: Optional[SolverConfig] = None) -> Grid:
    config = config or SolverConfig()
    return Grid(config.n_points, config.length)


def plane_wave(grid: Grid, k: float, amp: float) -> FieldState:
    """``amp * exp(i k x)``; ``k`` must be a multiple of ``2 pi / length``."""
    modes = k * grid.length / (2.0 * math.pi)
    if abs(modes - round(modes)) > 1e-9 * max(1.0, abs(modes)):
        raise ResolutionError(
            "k={0!r} is not commensurate with the domain length {1!r}".format(k, grid.length)
        )
    return FieldState(grid, amp * np.exp(1j * k * grid.nodes))


def _closed_phase(grid: Grid, nu: RealArray) -> RealArray:
    # phase of the loop x0 .. x0 + length, wound to a multiple of 2 pi
    loop = np.append(nu, nu[0])
    phi = integrate.cumulative_trapezoid(loop, dx=grid.spacing, initial=0.0)
    winding = phi[-1]
    target = 2.0 * math.pi * round(winding / (2.0 * math.pi))
    phi = phi[:-1]
    if abs(target - winding) > 1e-12 * max(1.0, abs(winding)):
        quarter = 0.25 * grid.length
        ramp = np.clip((grid.nodes - quarter) / quarter, 0.0, 1.0)
        phi = phi + (target - winding) * ramp
        log.debug("phase winding %g closed to %g over the far quarter", winding, target)
    return phi - phi[grid.n_points // 2]


def _field(grid: Grid, rho: RealArray, nu: RealArray) -> FieldState:
    if np.any(rho < 0) or not (np.all(np.isfinite(rho)) and np.all(np.isfinite(nu))):
        raise DomainError("profile must be finite with non-negative density")
    return FieldState(grid, np.sqrt(rho) * np.exp(1j * _closed_phase(grid, nu)))


def _check_width(grid: Grid, width: float) -> None:
    if width < 4.0 * grid.spacing:
        raise ResolutionError(
            "smoothing width {0!r} is below 4 grid spacings ({1!r})".format(
                width, 4.0 * grid.spacing
            )
        )


def _sigmoid(x: RealArray, width: float) -> RealArray:
    return 0.5 * (1.0 + np.tanh(x / width))


def step_shape(grid: Grid, width: float) -> RealArray:
    """0 left of the origin, 1 right of it, back to 0 across ``x = +-length / 2``."""
    x, half = grid.nodes, 0.5 * grid.length
    return _sigmoid(x, width) - _sigmoid(x - half, width) - _sigmoid(x + half, width) + 1.0


def init_from_step(grid: Grid, sd: StepData, width: Optional[float] = None) -> FieldState:
    """Smoothed step between ``sd.left`` and ``sd.right`` at ``x = 0``.

    :raises ResolutionError: If ``width`` is below four grid spacings.
    """
    width = SolverConfig().smoothing_width if width is None else width
    _check_width(grid, width)
    shape = step_shape(grid, width)
    rho = sd.left.rho + (sd.right.rho - sd.left.rho) * shape
    nu = sd.left.nu + (sd.right.nu - sd.left.nu) * shape
    return _field(grid, rho, nu)


def init_from_profile(
    grid: Grid, rho: Sequence[float], nu: Sequence[float], width: Optional[float] = None
) -> FieldState:
    """Field with density ``rho`` and velocity ``nu`` given on the grid nodes.

    Outside ``|x| < length / 4`` the profile is replaced by its mirror image
    so that it closes periodically, then optionally smoothed with a Gaussian
    of standard deviation ``width``.
    """
    rho = np.array(rho, dtype=float)
    nu = np.array(nu, dtype=float)
    if rho.shape != (grid.n_points,) or nu.shape != (grid.n_points,):
        raise DomainError("profile arrays must match the grid")
    x, n = grid.nodes, grid.n_points
    far = np.abs(x) > 0.25 * grid.length
    mirror = np.rint((np.sign(x) * 0.5 * grid.length - x + 0.5 * grid.length) / grid.spacing)
    source = mirror.astype(int) % n
    rho[far] = rho[source[far]]
    nu[far] = nu[source[far]]
    if width is not None:
        _check_width(grid, width)
        sigma = width / grid.spacing
        rho = ndimage.gaussian_filter1d(rho, sigma, mode="wrap")
        nu = ndimage.gaussian_filter1d(nu, sigma, mode="wrap")
    return _field(grid, rho, nu)


class SpectralSolver:
    """Integrating-factor RK4 stepper on Fourier coefficients."""

    __slots__ = ("grid", "time_step", "mask", "k", "exp_lin_half", "exp_lin_full")

    def __init__(self, grid: Grid, time_step: float, dealias_fraction: float) -> None:
        self.grid = grid
        self.time_step = time_step
        self.mask = grid.dealias_mask(dealias_fraction)
        self.k = grid.wavenumbers
        lin_op = 1j * self.k**3
        self.exp_lin_half = np.exp(0.5 * time_step * lin_op)
        self.exp_lin_full = np.exp(time_step * lin_op)

    def nonlinear(self, v: ComplexArray) -> ComplexArray:
        v = self.mask * v
        u = np.fft.ifft(v)
        ux = np.fft.ifft(1j * self.k * v)
        uxx = np.fft.ifft(-self.k * self.k * v)
        rho = (u * np.conj(u)).real
        n = -1.5j * rho * uxx + 0.75 * rho * rho * ux - 1.5j * ux * ux * np.conj(u)
        return self.mask * np.fft.fft(n)

    def step(self, v: ComplexArray) -> ComplexArray:
        h, e, e2 = self.time_step, self.exp_lin_half, self.exp_lin_full
        a = h * self.nonlinear(v)
        b = h * self.nonlinear(e * (v + 0.5 * a))
        c = h * self.nonlinear(e * v + 0.5 * b)
        d = h * self.nonlinear(e2 * v + e * c)
        return e2 * v + (e2 * a + 2.0 * e * (b + c) + d) / 6.0

    def __repr__(self) -> str:
        return "<SpectralSolver grid={0.grid!r} time_step={0.time_step!r}>".format(self)


def time_step(grid: Grid, config: SolverConfig, rho_max: float) -> float:
    """``config.dt`` if set, otherwise a step stable for densities up to ``rho_max``.

    The step is ``min(0.4 dx, dx^3 k_d)`` further capped by ``2.5 / S`` where
    ``S = 3 rho k_d^2 + 3/4 rho^2 k_d`` bounds the nonlinear stiffness and
    ``k_d`` is the largest retained wavenumber.
    """
    if config.dt is not None:
        return float(config.dt)
    dx = grid.spacing
    kd = config.dealias_fraction * math.pi / dx
    dt = min(0.4 * dx, dx**3 * kd)
    rho = DENSITY_HEADROOM * rho_max
    stiffness = 3.0 * rho * kd * kd + 0.75 * rho * rho * kd
    if stiffness > 0:
        dt = min(dt, 2.5 / stiffness)
    return dt


def _integrate(fs: FieldState, duration: float, dt: float, config: SolverConfig) -> FieldState:
    n_steps = max(1, int(math.ceil(duration / dt - 1e-9)))
    solver = SpectralSolver(fs.grid, duration / n_steps, config.dealias_fraction)
    peak0 = float(np.max(np.abs(fs.u)))
    limit = config.blowup_factor * max(peak0, 1e-12)
    v = np.fft.fft(fs.u)
    for i in range(1, n_steps + 1):
        v = solver.step(v)
        if i % _CHECK_EVERY and i != n_steps:
            continue
        peak = float(np.max(np.abs(np.fft.ifft(v))))
        if not math.isfinite(peak) or peak > limit:
            raise InstabilityError(
                "field blew up",
                {
                    "time": fs.time + i * solver.time_step,
                    "step": i,
                    "max_u": peak,
                    "dt": solver.time_step,
                },
            )
    log.debug("advanced %r by %g in %d steps of %g", fs, duration, n_steps, solver.time_step)
    return fs.advanced(np.fft.ifft(v), duration)


def evolve(fs: FieldState, duration: float, config: Optional[SolverConfig] = None) -> FieldState:
    """Advance ``fs`` by ``duration``.

    On blow-up the step is halved and the run restarted from ``fs``, up to
    ``config.retries`` times.

    :raises InstabilityError: If every attempt blows up.
    """
    config = config or SolverConfig()
    if duration < 0:
        raise DomainError("cannot evolve backwards, got {0!r}".format(duration))
    if duration == 0:
        return fs
    dt = time_step(fs.grid, config, float(np.max(fs.rho)))
    attempt = 0
    while True:
        try:
            return _integrate(fs, duration, dt, config)
        except InstabilityError as exc:
            attempt += 1
            if attempt > config.retries:
                raise
            dt *= 0.5
            log.warning(
                "instability at t=%r, restarting with dt=%g", exc.diagnostics.get("time"), dt
            )


def evolve_to(
    fs: FieldState, times: Sequence[float], config: Optional[SolverConfig] = None
) -> List[FieldState]:
    """Snapshots at the given absolute times, which must not precede ``fs.time``."""
    snapshots = []
    current = fs
    for t in sorted(times):
        if t < current.time:
            raise DomainError("snapshot time {0!r} precedes {1!r}".format(t, current.time))
        current = evolve(current, t - current.time, config)
        snapshots.append(current)
    return snapshots


def velocity(fs: FieldState, epsilon: float) -> Tuple[RealArray, np.ndarray]:
    """``Im(u_x conj(u)) / |u|^2``, NaN on cells with ``|u|^2 < epsilon``."""
    ux = np.fft.ifft(1j * fs.grid.wavenumbers * np.fft.fft(fs.u))
    rho = fs.rho
    vacuum = rho < epsilon
    nu = np.full(rho.shape, np.nan)
    nu[~vacuum] = (ux * np.conj(fs.u)).imag[~vacuum] / rho[~vacuum]
    return nu, vacuum


def _window(grid_spacing: float, window: float) -> int:
    return max(3, int(round(window / grid_spacing)) | 1)


def _extrema(rho: RealArray) -> np.ndarray:
    d = np.diff(rho)
    return np.flatnonzero(d[:-1] * d[1:] < 0) + 1


def _prominences(rho: RealArray, ext: np.ndarray) -> RealArray:
    # the ends of ``rho`` stand in for missing neighbours
    values = np.concatenate(([rho[0]], rho[ext], [rho[-1]]))
    step = np.abs(np.diff(values))
    return np.minimum(step[:-1], step[1:])


def _inside(x: RealArray, bounds: Optional[Tuple[float, float]]) -> np.ndarray:
    if bounds is None:
        return np.arange(x.size)
    return np.flatnonzero((x >= bounds[0]) & (x <= bounds[1]))


def local_wavelength(
    x: RealArray, rho: RealArray, level: float, bounds: Optional[Tuple[float, float]] = None
) -> Optional[float]:
    """Median spacing of the crests of ``rho`` with a prominence above ``level``.

    ``None`` when fewer than two such crests lie within ``bounds``.
    """
    idx = _inside(x, bounds)
    if idx.size < 3:
        return None
    r = rho[idx]
    ext = _extrema(r)
    if ext.size == 0:
        return None
    d = np.diff(r)
    crest = d[ext - 1] > 0
    keep = ext[crest & (_prominences(r, ext) > level)]
    if keep.size < 2:
        return None
    return float(np.median(np.diff(x[idx][keep])))


def oscillation_amplitude(rho: RealArray, size: int) -> RealArray:
    """Sliding ``max - min`` of ``rho``.

    Zero where no turning point lies within twice the window, so monotone
    ramps do not count as oscillations.
    """
    amp = ndimage.maximum_filter1d(rho, size, mode="wrap") - ndimage.minimum_filter1d(
        rho, size, mode="wrap"
    )
    d = np.diff(rho, append=rho[:1])
    turning = ((d > 0) & (np.roll(d, -1) < 0)) | ((d < 0) & (np.roll(d, -1) > 0))
    holds = ndimage.maximum_filter1d(turning.astype(float), 2 * size + 1, mode="wrap") > 0
    return np.where(holds, amp, 0.0)


def oscillation_edges(
    x: RealArray,
    rho: RealArray,
    jump: float,
    config: Optional[SolverConfig] = None,
    bounds: Optional[Tuple[float, float]] = None,
) -> Optional[Tuple[float, float]]:
    """Leftmost and rightmost positions of oscillations above threshold.

    The threshold is ``config.edge_threshold * jump``. The sliding window is
    ``config.window`` or, when unset, two local wavelengths measured within
    ``bounds`` (:data:`FALLBACK_WINDOW` if none can be measured). Positions
    are moved inward by half the window. Returns ``None`` when nothing
    oscillates.
    """
    config = config or SolverConfig()
    dx = x[1] - x[0]
    floor = 1e-8 * max(1.0, float(np.max(rho)))
    level = config.edge_threshold * max(jump, floor)
    window = config.window
    if window is None:
        wavelength = local_wavelength(x, rho, level, bounds)
        window = FALLBACK_WINDOW if wavelength is None else 2.0 * wavelength
    size = _window(dx, window)
    amp = oscillation_amplitude(rho, size)
    hits = amp > level
    if bounds is not None:
        hits &= (x >= bounds[0]) & (x <= bounds[1])
    index = np.flatnonzero(hits)
    if index.size == 0:
        return None
    shift = (size // 2) * dx
    left, right = x[index[0]] + shift, x[index[-1]] - shift
    if left > right:
        left = right = 0.5 * (x[index[0]] + x[index[-1]])
    return float(left), float(right)


def departure_edges(
    x: RealArray,
    rho: RealArray,
    left_value: float,
    right_value: float,
    tolerance: float,
    bounds: Optional[Tuple[float, float]] = None,
) -> Tuple[Optional[float], Optional[float]]:
    """First position from the left where ``rho`` leaves ``left_value`` and
    last position from the right where it leaves ``right_value``."""
    inside = np.ones(x.shape, dtype=bool)
    if bounds is not None:
        inside = (x >= bounds[0]) & (x <= bounds[1])
    off_left = np.flatnonzero(inside & (np.abs(rho - left_value) > tolerance))
    off_right = np.flatnonzero(inside & (np.abs(rho - right_value) > tolerance))
    left = float(x[off_left[0]]) if off_left.size else None
    right = float(x[off_right[-1]]) if off_right.size else None
    return left, right


def crossings(
    x: RealArray,
    rho: RealArray,
    start: float,
    stop: float,
    reference: float,
    levels: Sequence[float],
) -> List[Optional[float]]:
    """Walking from ``start`` to ``stop``, where ``|rho - reference|`` first
    exceeds each of ``levels``, interpolated between nodes."""
    if start <= stop:
        order = np.flatnonzero((x >= start) & (x <= stop))
    else:
        order = np.flatnonzero((x >= stop) & (x <= start))[::-1]
    dev = np.abs(rho[order] - reference)
    out: List[Optional[float]] = []
    for level in levels:
        above = np.flatnonzero(dev > level)
        if above.size == 0 or above[0] == 0:
            out.append(None)
            continue
        j = above[0]
        frac = (level - dev[j - 1]) / (dev[j] - dev[j - 1])
        xa, xb = x[order[j - 1]], x[order[j]]
        out.append(float(xa + frac * (xb - xa)))
    return out


def ramp_edge(
    x: RealArray, rho: RealArray, start: float, stop: float, reference: float, change: float
) -> Optional[float]:
    """Foot of a monotone ramp, extrapolated from the :data:`RAMP_LEVELS` crossings."""
    lo, hi = RAMP_LEVELS
    near, far = crossings(x, rho, start, stop, reference, (lo * change, hi * change))
    if near is None or far is None:
        return None
    return near - (far - near) * lo / (hi - lo)


def leading_soliton(
    x: RealArray, rho: RealArray, bounds: Tuple[float, float], side: str
) -> Optional[float]:
    """Centre of the outermost strong extremum on ``side`` of ``bounds``.

    Strong means a prominence of at least half the largest one in ``bounds``.
    """
    idx = _inside(x, bounds)
    if idx.size < 3:
        return None
    r = rho[idx]
    ext = _extrema(r)
    if ext.size == 0:
        return None
    prominence = _prominences(r, ext)
    strong = ext[prominence >= 0.5 * float(np.max(prominence))]
    k = int(strong[0] if side == "left" else strong[-1])
    a, b, c = r[k - 1], r[k], r[k + 1]
    curvature = a - 2.0 * b + c
    offset = 0.5 * (a - c) / curvature if curvature != 0 else 0.0
    xs = x[idx]
    return float(xs[k] + offset * (xs[1] - xs[0]))


def plateau_value(x: RealArray, rho: RealArray, lo: float, hi: float) -> float:
    """Median of ``rho`` over the central half of ``[lo, hi]``."""
    mid, half = 0.5 * (lo + hi), 0.25 * (hi - lo)
    members = rho[(x >= mid - half) & (x <= mid + half)]
    if members.size == 0:
        return math.nan
    return float(np.median(members))


def _clip(grid: Grid, lo: float, hi: float) -> Tuple[float, float]:
    quarter = 0.25 * grid.length
    return max(lo, -quarter), min(hi, quarter)


def measure(
    fs: FieldState,
    jump: Optional[float] = None,
    config: Optional[SolverConfig] = None,
    bounds: Optional[Tuple[float, float]] = None,
) -> Dict[str, Any]:
    """Observables of a snapshot.

    :param jump: Density jump that scales the edge threshold; defaults to
        the density range of the snapshot.
    :param bounds: Window searched for oscillation edges; defaults to the
        half domain around the origin.
    """
    config = config or SolverConfig()
    rho = fs.rho
    rho_max = float(np.max(rho))
    nu, vacuum = velocity(fs, config.vacuum_epsilon * rho_max)
    x = fs.grid.nodes
    if jump is None:
        jump = rho_max - float(np.min(rho))
    if bounds is None:
        quarter = 0.25 * fs.grid.length
        bounds = (-quarter, quarter)
    return {
        "time": fs.time,
        "x": x,
        "rho": rho,
        "nu": nu,
        "vacuum": vacuum,
        "mass": fs.mass,
        "bounds": bounds,
        "edges": oscillation_edges(x, rho, jump, config, bounds),
    }


def dispersion_relation(k: float, amp: float) -> float:
    return -(k**3) - 3.0 * amp * amp * k * k - 0.75 * amp**4 * k


def dispersion_test(k: float, amp: float, config: Optional[SolverConfig] = None) -> Dict[str, Any]:
    """Measure the frequency of a plane wave over one period.

    A vanishing amplitude is replaced by ``1e-6``. The domain length is
    rounded to a whole number of wavelengths.
    """
    config = config or SolverConfig(n_points=256, length=50.0)
    if not k > 0:
        raise DomainError("wavenumber must be positive, got {0!r}".format(k))
    test_amp = amp if amp > 0 else 1e-6
    wavelengths = max(1, int(round(k * config.length / (2.0 * math.pi))))
    grid = Grid(config.n_points, 2.0 * math.pi * wavelengths / k)
    if k > config.dealias_fraction * math.pi / grid.spacing:
        raise ResolutionError("k={0!r} is above the dealiasing cutoff".format(k))

    analytic = dispersion_relation(k, amp)
    omega_test = dispersion_relation(k, test_amp)
    period = 2.0 * math.pi / abs(omega_test)
    dt = config.dt if config.dt is not None else min(1e-3, 0.05 / abs(omega_test))
    stepping = config.replace(dt=dt)

    fs = plane_wave(grid, k, test_amp)
    mass0 = fs.mass
    advance = 0.0
    for _ in range(_DISPERSION_CHUNKS):
        nxt = evolve(fs, period / _DISPERSION_CHUNKS, stepping)
        advance += float(np.angle(np.vdot(fs.u, nxt.u)))
        fs = nxt
    measured = -advance / period
    return {
        "k": k,
        "amp": amp,
        "test_amp": test_amp,
        "omega_measured": measured,
        "omega_analytic": analytic,
        "rel_error": abs(measured - analytic) / abs(analytic),
        "mass_drift": abs(fs.mass - mass0) / mass0,
    }


def _relative(measured: Optional[float], analytic: float) -> Optional[float]:
    if measured is None:
        return None
    return abs(measured - analytic) / max(abs(analytic), 1e-12)


def _entry(analytic: float, measured: Optional[float], span: float) -> Dict[str, Any]:
    return {
        "analytic": analytic,
        "measured": measured,
        "rel_error": _relative(measured, analytic),
        "span_error": None if measured is None or span <= 0 else abs(measured - analytic) / span,
    }


def _physical_rho(pattern: WavePattern, region: Region, invariants: Sequence[float]) -> float:
    branch = region.branch(pattern.physical)
    return hydro.state_from_invariants(DispersionlessPair(*invariants[:2]), branch).rho


def _boundary(
    pattern: WavePattern,
    k: int,
    spans: List[Tuple[float, float]],
    x: RealArray,
    rho: RealArray,
    tolerance: float,
) -> Optional[float]:
    # walk from the middle of the plateau next to boundary k across it
    left, right = pattern.regions[k], pattern.regions[k + 1]
    if left.kind is RegionKind.PLATEAU:
        plateau, other, home = left, right, spans[k]
        far = spans[k + 1][1]
    elif right.kind is RegionKind.PLATEAU:
        plateau, other, home = right, left, spans[k + 1]
        far = spans[k][0]
    else:
        return None
    start = 0.5 * (home[0] + home[1])
    reference = plateau_value(x, rho, *home)
    if other.kind is RegionKind.RAREFACTION and other.family is not Family.DIAGONAL:
        change = abs(
            _physical_rho(pattern, other, other.invariants)
            - _physical_rho(pattern, other, other.right_invariants)
        )
        return ramp_edge(x, rho, start, far, reference, change)
    if other.kind.oscillatory:
        return crossings(x, rho, start, far, reference, (tolerance,))[0]
    return None


def compare_with_pattern(
    pattern: WavePattern, fs: FieldState, config: Optional[SolverConfig] = None
) -> Dict[str, Any]:
    """Analytic edges and plateaus of ``pattern`` against a snapshot of the PDE.

    Only the stretch of the snapshot covered by the pattern, padded by half
    its width on each side, is searched. Each boundary is measured from the
    plateau next to it: the foot of a fan is extrapolated from two
    departure levels, an oscillatory region starts where the departure
    exceeds ``edge_threshold * jump``. Soliton edges are the outermost strong
    extremum on the soliton side of each cnoidal DSW.
    """
    config = config or SolverConfig()
    t = fs.time
    if not t > 0:
        raise DomainError("comparison needs a snapshot at t > 0")
    sd = pattern.step
    speeds = pattern.edge_speeds
    if speeds:
        span = (max(speeds) - min(speeds)) * t
        pad = max(0.5 * span, 8.0 * fs.grid.spacing)
        bounds = _clip(fs.grid, min(speeds) * t - pad, max(speeds) * t + pad)
    else:
        span = 0.0
        bounds = _clip(fs.grid, -math.inf, math.inf)
    data = measure(fs, sd.jump, config, bounds)
    x, rho = data["x"], data["rho"]
    tolerance = config.edge_threshold * max(sd.jump, 1e-12)
    spans = [
        (max(r.left_speed * t, bounds[0]), min(r.right_speed * t, bounds[1]))
        for r in pattern.regions
    ]

    edges: Dict[str, Any] = {}
    last = len(speeds) - 1
    for k, speed in enumerate(speeds):
        name = "leftmost" if k == 0 else "rightmost" if k == last else "edge_{0}".format(k)
        measured = _boundary(pattern, k, spans, x, rho, tolerance)
        edges[name] = _entry(speed * t, measured, span)

    for index, region in enumerate(pattern.regions):
        side = riemann.soliton_side(region)
        if side is None:
            continue
        lo, hi = spans[index]
        if side == "left" and index > 0:
            lo = 0.5 * sum(spans[index - 1])
        elif side == "right" and index + 1 < len(spans):
            hi = 0.5 * sum(spans[index + 1])
        measured = leading_soliton(x, rho, (lo, hi), side)
        analytic = riemann.soliton_edge_speed(region) * t
        edges["soliton_{0}".format(index)] = _entry(analytic, measured, span)

    plateaus = []
    for index, region in enumerate(pattern.regions):
        if region.kind is not RegionKind.PLATEAU or index in (0, len(pattern.regions) - 1):
            continue
        analytic = _physical_rho(pattern, region, region.invariants)
        measured = plateau_value(x, rho, region.left_speed * t, region.right_speed * t)
        plateaus.append(
            {
                "region": index,
                "analytic": analytic,
                "measured": measured,
                "rel_error": _relative(measured, analytic),
            }
        )
    return {
        "time": t,
        "case": pattern.case.as_dict(),
        "bounds": list(bounds),
        "edges": edges,
        "plateaus": plateaus,
        "mass": data["mass"],
    }


def init_from_cubic(grid: Grid, d: CubicBreakData, width: Optional[float] = None) -> FieldState:
    """Cubic breaking profile on the upper branch, smoothed unless ``width`` is ``None``."""
    rho, nu = hodograph.initial_state(grid.nodes, d)
    return init_from_profile(grid, rho, nu, width)


def compare_with_cubic(
    d: CubicBreakData, fs: FieldState, config: Optional[SolverConfig] = None
) -> Dict[str, Any]:
    """Edges of the breaking DSW against a snapshot of the PDE.

    The search covers the analytic fan padded by its width on each side.
    The harmonic edge is the left end of the oscillations, the soliton edge
    the rightmost strong extremum.
    """
    config = config or SolverConfig()
    t = fs.time
    if not t > 0:
        raise DomainError("comparison needs a snapshot at t > 0")
    x_left, x_right, l4 = hodograph.edge_laws(t, d)
    width = x_right - x_left
    pad = max(width, 8.0 * fs.grid.spacing)
    bounds = _clip(fs.grid, x_left - pad, x_right + pad)
    sm = math.sqrt(d.l_minus)
    jump = (math.sqrt(l4) + sm) ** 2 - (math.sqrt(d.l_plus) + sm) ** 2
    data = measure(fs, jump, config, bounds)
    harmonic = data["edges"][0] if data["edges"] else None
    soliton = leading_soliton(data["x"], data["rho"], bounds, "right")
    edges = {
        "x_left": _entry(x_left, harmonic, width),
        "x_right": _entry(x_right, soliton, width),
    }
    return {"time": t, "l4_soliton": l4, "bounds": list(bounds), "edges": edges}
