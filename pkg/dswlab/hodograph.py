"""Hodograph solution of the cubic breaking problem.

The dispersionless flow starts from ``x = (l_plus - p)^3`` for ``x > 0``,
the constant ``l_plus = p`` behind it, over a constant ``l_minus = a``, and
breaks at the origin at ``t = 0``. Inside the resulting
DSW the invariants are ``(a, p, l3, l4)`` with ``l3, l4`` solving

    x - v_i t = omega_i,   i = 3, 4,

where ``omega_i = W - d_i W / d_i ln L`` and ``W`` is a cubic combination of
the symmetric functions of the four invariants. The soliton edge (``l3 = p``)
sits on the right of the fan, the harmonic edge (``l3 = l4``) on the left.
"""

import logging
import math
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from . import hydro, onephase, whitham
from .config import RunConfig
from .errors import DomainError, OutOfRegionError, SolverError
from .models.cubic import CubicBreakData, HodographCoeffs
from .models.state import (
    DispersionlessPair,
    Interval,
    ModulationState,
    MonotonicityBranch,
    SignBranch,
)

log = logging.getLogger(__name__)

#: Largest accepted residual of the two modulation relations, relative to ``|x|``.
RESIDUAL_TOLERANCE = 1e-10

_CONTINUATION_STEPS = 16


def hodograph_coefficients(d: CubicBreakData) -> HodographCoeffs:
    a, p = d.l_minus, d.l_plus
    return HodographCoeffs(
        -(35 * p**3 + 35 * p * p * a - 7 * p * a * a + a**3) / 35.0,
        2.0 * (35 * p * p + 14 * p * a - a * a) / 35.0,
        -8.0 * (7 * p + a) / 35.0,
        16.0 / 35.0,
    )


def _symmetric(l: Sequence[float]) -> Tuple[float, float, float]:
    l1, l2, l3, l4 = l
    e1 = l1 + l2 + l3 + l4
    e2 = l1 * (l2 + l3 + l4) + l2 * (l3 + l4) + l3 * l4
    e3 = l1 * l2 * (l3 + l4) + (l1 + l2) * l3 * l4
    return e1, e2, e3


def generating_function(
    ms: ModulationState, coeffs: HodographCoeffs
) -> Tuple[float, Tuple[float, ...]]:
    """Return ``W`` and its gradient with respect to ``l1..l4``."""
    e1, e2, e3 = _symmetric(ms.invariants)
    c0, c1, c2, c3 = coeffs.astuple()
    w = (
        c0
        + c1 * 0.5 * e1
        + c2 * (0.375 * e1 * e1 - 0.5 * e2)
        + c3 * (0.5 * e3 + 0.3125 * e1**3 - 0.75 * e1 * e2)
    )
    grad = []
    for li in ms.invariants:
        de2 = e1 - li
        de3 = e2 - li * de2
        dw2 = 0.75 * e1 - 0.5 * de2
        dw3 = 0.5 * de3 + 0.9375 * e1 * e1 - 0.75 * (e2 + e1 * de2)
        grad.append(0.5 * c1 + c2 * dw2 + c3 * dw3)
    return w, tuple(grad)


def _omegas(ms: ModulationState, coeffs: HodographCoeffs) -> Tuple[float, ...]:
    w, grad = generating_function(ms, coeffs)
    dlog = onephase.wavelength_derivatives(ms)
    return tuple(w - g / dl for g, dl in zip(grad, dlog))


def omega(i: int, ms: ModulationState, d: CubicBreakData) -> float:
    """Hodograph function ``omega_i`` for ``i = 1..4``.

    :raises DegenerateConfiguration: If the wavelength is undefined at ``ms``.
    """
    if i not in (1, 2, 3, 4):
        raise DomainError("omega index must be 1..4, got {0!r}".format(i))
    return _omegas(ms, hodograph_coefficients(d))[i - 1]


def omega_soliton_limit(l4: float, d: CubicBreakData) -> Tuple[float, float]:
    """``(omega3, omega4)`` at ``l3 = l2 = p``.

    There ``omega3 = W`` and ``omega4 = W + 2 (l4 - p) d_4 W``; the latter
    equals the initial profile ``(l4 - p)^3``.
    """
    ms = ModulationState(d.l_minus, d.l_plus, d.l_plus, l4)
    w, grad = generating_function(ms, hodograph_coefficients(d))
    return w, w + 2.0 * (l4 - d.l_plus) * grad[3]


def soliton_edge_l4(t: float, d: CubicBreakData) -> float:
    a, p = d.l_minus, d.l_plus
    return p + 3.5 * t + 0.5 * math.sqrt(7.0 / 3.0) * math.sqrt(t * (4 * a + 20 * p + 21 * t))


def harmonic_edge_time(c: float, d: CubicBreakData) -> float:
    """Time at which the harmonic edge carries ``l3 = l4 = c``."""
    a, p = d.l_minus, d.l_plus
    q = 16 * c * c + 7 * a * a + 6 * a * p + 3 * p * p - 4 * c * (5 * a + 3 * p)
    dn = 16 * c**3 - 16 * c * c * (a + p) + (a - p) ** 2 * (a + p) + 4 * c * (a + p) ** 2
    return 8.0 * (c - p) ** 2 * q / (35.0 * dn)


def harmonic_edge_position(c: float, t: float, d: CubicBreakData) -> float:
    a, p = d.l_minus, d.l_plus
    shift = -16.0 * (c - p) ** 3 * (8 * c - 7 * a - p) / (35.0 * (a + p - 2 * c))
    return shift + whitham.harmonic_velocity_upper(a, p, c) * t


def _harmonic_edge_value(t: float, d: CubicBreakData) -> float:
    p = d.l_plus
    hi = p + max(1.0, p)
    while harmonic_edge_time(hi, d) < t:
        hi = p + 2.0 * (hi - p)
    return optimize.brentq(lambda c: harmonic_edge_time(c, d) - t, p, hi, xtol=1e-14 * hi)


def _edges(t: float, d: CubicBreakData) -> Tuple[float, float, float, float]:
    if t < 0:
        raise DomainError("edge laws need t >= 0, got {0!r}".format(t))
    if t == 0:
        return 0.0, 0.0, d.l_plus, d.l_plus
    l4 = soliton_edge_l4(t, d)
    x_right = hydro.v_plus(d.l_minus, l4) * t + (l4 - d.l_plus) ** 3
    c = _harmonic_edge_value(t, d)
    return harmonic_edge_position(c, t, d), x_right, c, l4


def edge_laws(t: float, d: CubicBreakData) -> Tuple[float, float, float]:
    """Return ``(xL, xR, l4)`` of the DSW at time ``t``.

    ``xL`` is the harmonic edge, ``xR`` the soliton edge and ``l4`` the
    invariant carried by the soliton edge.
    """
    x_left, x_right, _, l4 = _edges(t, d)
    return x_left, x_right, l4


def _modulation(params: Sequence[float], d: CubicBreakData) -> ModulationState:
    a, p = d.l_minus, d.l_plus
    floor = 1e-12 * max(1.0, p)
    l3 = p + max(params[0], 0.0)
    l4 = max(l3 + max(params[1], 0.0), p + floor)
    return ModulationState(a, p, l3, l4)


def _residuals(ms: ModulationState, x: float, t: float, coeffs: HodographCoeffs) -> np.ndarray:
    v = whitham.whitham_velocities(ms)
    w = _omegas(ms, coeffs)
    return np.array([x - v[2] * t - w[2], x - v[3] * t - w[3]])


def _least_squares(x, t, d, coeffs, guess) -> Tuple[np.ndarray, float]:
    result = optimize.least_squares(
        lambda params: _residuals(_modulation(params, d), x, t, coeffs),
        np.maximum(guess, 0.0),
        bounds=([0.0, 0.0], [np.inf, np.inf]),
        x_scale="jac",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=200,
    )
    return result.x, float(np.max(np.abs(result.fun)))


def _nested(x, t, d, coeffs, c_left, l4_right) -> np.ndarray:
    p = d.l_plus
    floor = 1e-12 * max(1.0, p)

    def l4_for(l3: float) -> float:
        grid = np.linspace(max(l3, c_left) + floor, l4_right * (1 + 1e-6) + floor, 64)
        values = [_residuals(ModulationState(d.l_minus, p, l3, g), x, t, coeffs)[1] for g in grid]
        for i in range(len(grid) - 1):
            if values[i] * values[i + 1] <= 0.0:
                return optimize.brentq(
                    lambda g: _residuals(ModulationState(d.l_minus, p, l3, g), x, t, coeffs)[1],
                    grid[i],
                    grid[i + 1],
                )
        raise SolverError("no l4 root", {"x": x, "t": t, "l3": l3})

    def outer(l3: float) -> float:
        return _residuals(ModulationState(d.l_minus, p, l3, l4_for(l3)), x, t, coeffs)[0]

    try:
        l3 = optimize.brentq(outer, p, c_left, xtol=1e-15 * max(1.0, c_left))
    except ValueError as exc:
        raise SolverError("nested bisection did not bracket l3", {"x": x, "t": t}) from exc
    l4 = l4_for(l3)
    return np.array([l3 - p, l4 - l3])


def solve_cubic_modulation(x: float, t: float, d: CubicBreakData) -> ModulationState:
    """Invariants ``(a, p, l3, l4)`` of the DSW at ``(x, t)``.

    :raises OutOfRegionError: If ``(x, t)`` lies outside the DSW fan.
    :raises SolverError: If no solver reaches the residual tolerance.
    """
    if t < 0:
        raise DomainError("the DSW only exists for t >= 0, got {0!r}".format(t))
    a, p = d.l_minus, d.l_plus
    if t == 0:
        if x != 0:
            raise OutOfRegionError("at t = 0 the DSW is the single point x = 0")
        return ModulationState(a, p, p, p)
    x_left, x_right, c_left, l4_right = _edges(t, d)
    slack = 1e-12 * max(1.0, abs(x_left))
    if not x_left - slack <= x <= x_right + slack:
        raise OutOfRegionError(
            "x={0!r} is outside the DSW [{1!r}, {2!r}] at t={3!r}".format(x, x_left, x_right, t)
        )
    if x >= x_right:
        return ModulationState(a, p, p, l4_right)
    if x <= x_left:
        return ModulationState(a, p, c_left, c_left)

    coeffs = hodograph_coefficients(d)
    tolerance = RESIDUAL_TOLERANCE * max(1.0, abs(x), abs(x_left))
    frac = (x - x_left) / (x_right - x_left)
    guess = np.array([(1.0 - frac) * (c_left - p), frac * (l4_right - p)])
    params, residual = _least_squares(x, t, d, coeffs, guess)
    if residual > tolerance:
        log.debug("direct solve at x=%r t=%r left residual %g, continuing", x, t, residual)
        params = np.array([0.0, l4_right - p])
        for xi in np.linspace(x_right, x, _CONTINUATION_STEPS + 1)[1:]:
            params, residual = _least_squares(xi, t, d, coeffs, params)
    if residual > tolerance:
        log.warning("continuation at x=%r t=%r left residual %g, bisecting", x, t, residual)
        params = _nested(x, t, d, coeffs, c_left, l4_right)
        residual = float(np.max(np.abs(_residuals(_modulation(params, d), x, t, coeffs))))
    if residual > tolerance:
        raise SolverError(
            "modulation relations not satisfied",
            {"x": x, "t": t, "residual": residual, "l3": p + params[0]},
        )
    return _modulation(params, d)


def _hopf_roots(x: float, t: float, d: CubicBreakData) -> np.ndarray:
    a, p = d.l_minus, d.l_plus
    coeffs = [
        1.0,
        -7.5 * t,
        -(15.0 * p + 3.0 * a) * t,
        -1.5 * t * (5 * p * p + 2 * a * p + a * a) - x,
    ]
    roots = np.roots(coeffs)
    scale = max(1.0, float(np.max(np.abs(roots))))
    real = np.sort(roots[np.abs(roots.imag) <= 1e-7 * scale].real)
    polished = []
    for y in real:
        for _ in range(3):
            f = ((y + coeffs[1]) * y + coeffs[2]) * y + coeffs[3]
            df = (3.0 * y + 2.0 * coeffs[1]) * y + coeffs[2]
            if df == 0.0:
                break
            y -= f / df
        polished.append(y)
    return np.array(polished) + p


def dispersionless_profile(x: float, t: float, d: CubicBreakData) -> DispersionlessPair:
    """Invariants of the breaking simple wave outside the DSW.

    Behind the wave (``x < 0`` at breaking, left of the harmonic edge
    later) the state is the constant ``(l_minus, l_plus)`` of ``d``.

    :raises OutOfRegionError: Inside the fan, where the simple wave is
        multivalued.
    """
    behind = DispersionlessPair(d.l_minus, d.l_plus)
    if t > 0:
        x_left, x_right, _ = edge_laws(t, d)
        if x_left <= x <= x_right:
            raise OutOfRegionError("x={0!r} is inside the DSW at t={1!r}".format(x, t))
        if x < x_left:
            return behind
    l_plus = _hopf_roots(x, t, d)[-1]
    if l_plus <= d.l_plus:
        return behind
    return DispersionlessPair(d.l_minus, l_plus)


def initial_state(xs: Sequence[float], d: CubicBreakData) -> Tuple[np.ndarray, np.ndarray]:
    """Density and velocity of the ``t = 0`` profile on the upper branch.

    ``l_plus = p + x^(1/3)`` for ``x > 0`` and ``p`` behind the breaking point.
    """
    xs = np.asarray(xs, dtype=float)
    l_plus = d.l_plus + np.cbrt(np.maximum(xs, 0.0))
    sp, sm = np.sqrt(l_plus), math.sqrt(d.l_minus)
    return (sp + sm) ** 2, 0.5 * (sp - sm) ** 2


def cubic_profile(
    xs: Sequence[float], t: float, d: CubicBreakData, config: Optional[RunConfig] = None
) -> Dict[str, Any]:
    """Densities of both columns along ``xs`` at time ``t > 0``.

    Outside the fan the simple wave or the constant state behind it is
    used. Inside the fan the phase is accumulated from the soliton edge.
    """
    if not t > 0:
        raise DomainError("profiles need t > 0, got {0!r}".format(t))
    config = config or RunConfig()
    xs = np.asarray(xs, dtype=float)
    x_left, x_right, l4_right = edge_laws(t, d)
    inside = [int(i) for i in np.flatnonzero((xs >= x_left) & (xs <= x_right))]

    with config.executor() as pool:
        states = dict(zip(inside, pool.map(lambda i: solve_cubic_modulation(xs[i], t, d), inside)))

    out: Dict[str, Any] = {"x": xs}
    for key in ("l_plus", "l3", "l4", "rho_upper", "rho_lower", "phase"):
        out[key] = np.full(xs.size, np.nan)

    order = sorted(inside, key=lambda i: -xs[i])
    if order:
        k = [0.0]
        for i in order:
            _, L = onephase.modulus_and_wavelength(states[i])
            k.append(0.0 if math.isinf(L) else 2.0 * math.pi / L)
        path = np.concatenate(([x_right], xs[order]))
        out["phase"][order] = integrate.cumulative_trapezoid(k, path, initial=0.0)[1:]

    columns = (
        ("upper", SignBranch.UPPER_SIGNS, MonotonicityBranch.UPPER),
        ("lower", SignBranch.LOWER_SIGNS, MonotonicityBranch.LOWER),
    )
    for i in range(xs.size):
        if i in states:
            ms = states[i]
            m, L = onephase.modulus_and_wavelength(ms)
            xi = 0.0 if math.isinf(L) else out["phase"][i] * L / (2.0 * math.pi)
            out["l3"][i], out["l4"][i] = ms.l3, ms.l4
            for column, sign, _ in columns:
                wave = onephase.wave_params(ms.with_branch(sign), Interval.LOW)
                out["rho_" + column][i] = onephase.density_profile(xi, wave, m)
            continue
        try:
            pair = dispersionless_profile(xs[i], t, d)
        except OutOfRegionError:
            continue
        out["l_plus"][i] = pair.l_plus
        for column, _, branch in columns:
            out["rho_" + column][i] = hydro.state_from_invariants(pair, branch).rho
    log.debug("cubic profile at t=%r: fan [%g, %g], l4=%g", t, x_left, x_right, l4_right)
    return out
