"""Self-similar solutions of the step problem.

Step data splits into a left-going wave on ``l_plus`` (the first wave) and a
right-going wave on ``l_minus`` (the second wave). Each one is a rarefaction
or a cnoidal DSW depending on the sign of the jump, which gives the six
letters A to F. Data whose two states lie on opposite sides of the fold line
``rho = 2 nu`` get a contact DSW appended on the right.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from . import hydro, onephase, whitham
from .config import RunConfig
from .errors import (
    DegenerateConfiguration,
    DomainError,
    PreconditionError,
    SingularConfiguration,
    SolverError,
)
from .models.pattern import (
    COLUMNS,
    ColumnSample,
    Family,
    Letter,
    PatternCase,
    PatternSample,
    Region,
    RegionKind,
    Side,
    StepData,
    VacuumPoint,
    WavePattern,
)
from .models.state import (
    DispersionlessPair,
    Interval,
    ModulationState,
    MonotonicityBranch,
    SignBranch,
)

log = logging.getLogger(__name__)

_INF = math.inf
_RTOL = 4.0 * np.finfo(float).eps

_UPPER_COMBOS = ((1, 1, 1, -1), (1, 1, -1, 1), (1, -1, 1, 1), (-1, 1, 1, 1))
_LOWER_COMBOS = ((-1, 1, 1, -1), (1, -1, 1, -1), (1, 1, -1, -1), (1, 1, 1, 1))


def _tolerance(sd: StepData, config: RunConfig) -> float:
    return config.tie_tolerance * max(1.0, sd.left_pair.l_plus, sd.right_pair.l_plus)


def _sign_branch(branch: MonotonicityBranch) -> SignBranch:
    if branch is MonotonicityBranch.UPPER:
        return SignBranch.UPPER_SIGNS
    return SignBranch.LOWER_SIGNS


def _velocity_index(region: Region) -> int:
    if region.kind is RegionKind.CONTACT_DSW:
        return 0
    if region.family is Family.FIRST:
        return 1
    return 2


def classify(sd: StepData, config: Optional[RunConfig] = None) -> PatternCase:
    """Return the pattern letter and side of ``sd``.

    Invariants closer than the tie tolerance count as equal; such data are
    sent to the neighbouring case, in which some region has zero width.
    """
    config = config or RunConfig()
    lm_l, lp_l = sd.left_pair.astuple()
    lm_r, lp_r = sd.right_pair.astuple()
    tol = _tolerance(sd, config)
    first_rarefaction = lp_r < lp_l - tol
    second_rarefaction = lm_r < lm_l - tol
    if first_rarefaction and second_rarefaction:
        letter = Letter.A if lp_r < lm_l - tol else Letter.B
    elif first_rarefaction:
        letter = Letter.C
    elif second_rarefaction:
        letter = Letter.D
    else:
        letter = Letter.E if lm_r <= lp_l + tol else Letter.F
    return PatternCase(letter, sd.side)


def _first_rarefaction(lm: float, lp_l: float, lp_r: float) -> Region:
    return Region(
        RegionKind.RAREFACTION,
        hydro.v_plus(lm, lp_l),
        hydro.v_plus(lm, lp_r),
        (lm, lp_l),
        varying=(1,),
        right_value=lp_r,
        family=Family.FIRST,
    )


def _second_rarefaction(lm_l: float, lm_r: float, lp: float) -> Region:
    return Region(
        RegionKind.RAREFACTION,
        hydro.v_minus(lm_l, lp),
        hydro.v_minus(lm_r, lp),
        (lm_l, lp),
        varying=(0,),
        right_value=lm_r,
        family=Family.SECOND,
    )


def _low_intervals() -> Dict[str, Interval]:
    return {column: Interval.LOW for column in COLUMNS}


def _merged_lower_intervals(contact: bool = False) -> Dict[str, Interval]:
    return {
        "upper": onephase.profile_interval(SignBranch.UPPER_SIGNS, 1, contact=contact),
        "lower": onephase.profile_interval(SignBranch.LOWER_SIGNS, 1, contact=contact),
    }


def _second_dsw(lm: float, lp_l: float, lp_r: float, end: float, right_speed: float) -> Region:
    # l3 runs from the harmonic edge l3 = l4 down to ``end``
    return Region(
        RegionKind.CNOIDAL_DSW,
        whitham.harmonic_velocity_upper(lm, lp_l, lp_r),
        right_speed,
        (lm, lp_l, lp_r, lp_r),
        varying=(2,),
        right_value=end,
        family=Family.SECOND,
        intervals=_low_intervals(),
    )


def _first_dsw(lm_l: float, start: float, lm_r: float, lp: float, left_speed: float) -> Region:
    # l2 runs from ``start`` down to the harmonic edge l1 = l2
    return Region(
        RegionKind.CNOIDAL_DSW,
        left_speed,
        whitham.harmonic_velocity_lower(lm_l, lm_r, lp),
        (lm_l, start, lm_r, lp),
        varying=(1,),
        right_value=lm_l,
        family=Family.FIRST,
        intervals=_merged_lower_intervals(),
    )


def _plateau(pair: Tuple[float, float], left: float, right: float, flipped: bool = False) -> Region:
    return Region(RegionKind.PLATEAU, left, right, pair, flipped=flipped)


def _contact(start: float, lm_r: float, lp_r: float, left_speed: float, tol: float) -> Region:
    den = 4.0 * start - 2.0 * (lm_r + lp_r)
    if abs(den) <= tol:
        raise SingularConfiguration(
            "contact DSW edge speed has a vanishing denominator",
            {"l1": start, "l3": lm_r, "l4": lp_r},
        )
    return Region(
        RegionKind.CONTACT_DSW,
        left_speed,
        -1.5 * (lm_r - lp_r) ** 2,
        (start, start, lm_r, lp_r),
        varying=(0, 1),
        right_value=0.0,
        intervals=_merged_lower_intervals(contact=True),
    )


def _assemble(pc: PatternCase, sd: StepData, tol: float):
    lm_l, lp_l = sd.left_pair.astuple()
    lm_r, lp_r = sd.right_pair.astuple()
    letter = pc.letter
    plateaus: List[DispersionlessPair] = []

    if letter is Letter.A:
        # both fans meet the fold, where v_plus = v_minus = -12 l^2
        first = _first_rarefaction(lm_l, lp_l, lm_l)
        second = _second_rarefaction(lp_r, lm_r, lp_r)
        fan = Region(
            RegionKind.RAREFACTION,
            first.right_speed,
            second.left_speed,
            (lm_l, lm_l),
            varying=(0, 1),
            right_value=lp_r,
            family=Family.DIAGONAL,
        )
        # labelled as the physical column sees it
        physical = "upper" if sd.left_branch is MonotonicityBranch.UPPER else "lower"
        fan.kind = fan.kind_for(physical)
        inner = [first, fan, second]
    elif letter is Letter.F:
        full = ModulationState(lm_l, lp_l, lm_r, lp_r)
        v = whitham.whitham_velocities(full)
        s2, s3 = v[2], v[1]
        inner = [
            _second_dsw(lm_l, lp_l, lp_r, lm_r, s2),
            Region(RegionKind.PERIODIC, s2, s3, full.invariants, intervals=_low_intervals()),
            _first_dsw(lm_l, lp_l, lm_r, lp_r, s3),
        ]
    else:
        if letter in (Letter.B, Letter.C):
            first = _first_rarefaction(lm_l, lp_l, lp_r)
        else:
            first = _second_dsw(
                lm_l, lp_l, lp_r, lp_l, whitham.soliton_velocity(lm_l, lp_l, lp_r)
            )
        if letter in (Letter.B, Letter.D):
            second = _second_rarefaction(lm_l, lm_r, lp_r)
        else:
            second = _first_dsw(
                lm_l, lm_r, lm_r, lp_r, whitham.soliton_velocity(lm_l, lm_r, lp_r)
            )
        middle = (lm_l, lp_r)
        plateaus.append(DispersionlessPair(*middle))
        inner = [first, _plateau(middle, first.right_speed, second.left_speed), second]

    first, second = inner[0], inner[-1]
    speeds = [first.left_speed, first.right_speed, second.left_speed, second.right_speed]
    cross = pc.side is Side.CROSS_SIDE
    if cross:
        start = lm_r if letter in (Letter.A, Letter.B, Letter.D) else lm_l
        contact = _contact(start, lm_r, lp_r, speeds[-1], tol)
        inner.append(contact)
        speeds.append(contact.right_speed)
    return inner, speeds, plateaus


def _check_case(pc: PatternCase, sd: StepData, config: RunConfig) -> None:
    expected = classify(sd, config)
    if expected != pc:
        raise PreconditionError("step data belong to {0}, not {1}".format(expected, pc))


def edge_speeds(
    pc: PatternCase, sd: StepData, config: Optional[RunConfig] = None
) -> Tuple[float, ...]:
    """Return ``(s1, s2, s3, s4)``, plus ``s5`` on the cross side.

    These are the closed-form speeds, including those of regions that have
    zero width for ``sd``; :attr:`WavePattern.edge_speeds` keeps only the
    boundaries of regions that remain.

    :raises PreconditionError: If ``pc`` is not the case of ``sd``.
    :raises SingularConfiguration: If a contact DSW starts where its edge
        speed formula is singular.
    """
    config = config or RunConfig()
    _check_case(pc, sd, config)
    return tuple(_assemble(pc, sd, _tolerance(sd, config))[1])


def build_pattern(sd: StepData, config: Optional[RunConfig] = None) -> WavePattern:
    config = config or RunConfig()
    pc = classify(sd, config)
    tol = _tolerance(sd, config)
    inner, speeds, plateaus = _assemble(pc, sd, tol)

    scale = max(1.0, max(abs(s) for s in speeds))
    for a, b in zip(speeds, speeds[1:]):
        if b < a - config.tie_tolerance * scale:
            log.warning("edge speeds of %s are not ordered: %r", pc, speeds)
            break

    cross = pc.side is Side.CROSS_SIDE
    regions = [_plateau(sd.left_pair.astuple(), -_INF, speeds[0])]
    for region in inner + [_plateau(sd.right_pair.astuple(), speeds[-1], _INF, flipped=cross)]:
        if region.width <= config.tie_tolerance * scale:
            log.debug("dropping zero-width %s region of %s", region.kind.value, pc)
            continue
        last = regions[-1]
        if (
            region.kind is RegionKind.PLATEAU
            and last.kind is RegionKind.PLATEAU
            and last.flipped == region.flipped
            and np.allclose(last.invariants, region.invariants, rtol=0.0, atol=tol)
        ):
            regions[-1] = _plateau(
                last.invariants, last.left_speed, region.right_speed, last.flipped
            )
            continue
        regions.append(region)

    vacuum = _find_vacuum(regions)
    pattern = WavePattern(pc, sd, regions, speeds, plateaus, vacuum)
    log.debug("built %r with speeds %r", pattern, speeds)
    return pattern


def vacuum_points(pattern: WavePattern) -> Tuple[VacuumPoint, ...]:
    """Positions where a column's oscillation touches zero density."""
    return tuple(_find_vacuum(pattern.regions))


def _find_vacuum(regions: Sequence[Region]) -> List[VacuumPoint]:
    points = []
    for index, region in enumerate(regions):
        if not region.kind.oscillatory or not region.varying:
            continue
        lo, hi = sorted((region.left_value, region.right_value))
        slack = 1e-12 * max(1.0, hi)
        roots = [math.sqrt(v) for v in region.invariants]
        for column in COLUMNS:
            if region.intervals.get(column) is not Interval.LOW:
                continue
            sign = _sign_branch(region.branch(column))
            combos = _UPPER_COMBOS if sign is SignBranch.UPPER_SIGNS else _LOWER_COMBOS
            for combo in combos:
                coef = sum(combo[i] for i in region.varying)
                if coef == 0:
                    continue
                rest = sum(combo[i] * roots[i] for i in range(4) if i not in region.varying)
                root = -rest / coef
                if root < 0.0:
                    continue
                value = root * root
                if not lo - slack <= value <= hi + slack:
                    continue
                value = min(max(value, lo), hi)
                ms = ModulationState(*region.at(value))
                speed = whitham.whitham_velocities(ms)[_velocity_index(region)]
                points.append(VacuumPoint(index, column, value, speed))
    return points


def _solve_modulation(region: Region, z: float, config: RunConfig) -> float:
    index = _velocity_index(region)
    lo, hi = sorted((region.left_value, region.right_value))

    def residual(value: float) -> float:
        return whitham.whitham_velocities(ModulationState(*region.at(value)))[index] - z

    grid = np.linspace(lo, hi, config.scan_points)
    values = np.array([residual(v) for v in grid])
    roots = [float(v) for v in grid[values == 0.0]]
    xtol = 1e-15 * max(1.0, hi)
    for i in np.flatnonzero(values[:-1] * values[1:] < 0.0):
        roots.append(optimize.brentq(residual, grid[i], grid[i + 1], xtol=xtol, rtol=_RTOL))
    if not roots:
        raise SolverError(
            "velocity does not reach z inside the region",
            {
                "z": z,
                "kind": region.kind.value,
                "range": (lo, hi),
                "residuals": (float(values[0]), float(values[-1])),
            },
        )
    if len(roots) == 1:
        return roots[0]
    fraction = (z - region.left_speed) / region.width
    guess = region.left_value + fraction * (region.right_value - region.left_value)
    log.warning(
        "non-monotone velocity in %s region at z=%r, %d roots", region.kind.value, z, len(roots)
    )
    return min(roots, key=lambda r: abs(r - guess))


def _region_invariants(region: Region, z: float, config: RunConfig) -> Tuple[float, ...]:
    if not region.varying or z <= region.left_speed:
        return region.invariants
    if z >= region.right_speed:
        return region.right_invariants
    if region.kind in (RegionKind.RAREFACTION, RegionKind.VACUUM):
        lo, hi = sorted((region.left_value, region.right_value))
        if region.family is Family.DIAGONAL:
            value = min(max(hydro.diagonal_invariant(z), lo), hi)
            return (value, value)
        if region.family is Family.FIRST:
            value = min(max(hydro.rarefaction_l_plus(region.invariants[0], z), lo), hi)
            return (region.invariants[0], value)
        value = min(max(hydro.rarefaction_l_minus(region.invariants[1], z), lo), hi)
        return (value, region.invariants[1])
    return region.at(_solve_modulation(region, z, config))


def _shape(ms: ModulationState) -> Tuple[float, float]:
    try:
        return onephase.modulus_and_wavelength(ms)
    except DegenerateConfiguration:
        # three merged invariants: a solitary wave or a constant
        return 1.0, _INF


def _columns(
    pattern: WavePattern, index: int, region: Region, invariants: Sequence[float], phase: float
) -> Tuple[Dict[str, ColumnSample], Optional[float]]:
    columns: Dict[str, ColumnSample] = {}
    if not region.kind.oscillatory:
        pair = DispersionlessPair(*invariants)
        step = pattern.step
        for column in COLUMNS:
            branch = region.branch(column)
            if index == 0 and branch is step.left_branch:
                state = step.left
            elif index == len(pattern.regions) - 1 and branch is step.right_branch:
                state = step.right
            else:
                state = hydro.state_from_invariants(pair, branch)
            columns[column] = ColumnSample.constant(state)
        return columns, None

    m = None
    for column in COLUMNS:
        ms = ModulationState(*invariants, sign_branch=_sign_branch(region.branch(column)))
        wave = onephase.wave_params(ms, region.intervals.get(column, Interval.LOW))
        m, L = _shape(ms)
        xi = 0.0 if math.isinf(L) else phase * L / (2.0 * math.pi)
        rho = float(onephase.density_profile(xi, wave, m))
        columns[column] = ColumnSample(rho, math.nan, wave.envelope, wave)
    return columns, m


def sample_pattern(
    pattern: WavePattern,
    x: float,
    t: float,
    phase: float = 0.0,
    config: Optional[RunConfig] = None,
) -> PatternSample:
    """Evaluate the self-similar solution at ``(x, t)``.

    :param pattern: Pattern from :func:`build_pattern`.
    :param x: Position.
    :param t: Time, strictly positive.
    :param phase: Oscillation phase in radians; ``0`` picks the extreme
        turning point of the wave (its minimum on the low interval, its
        maximum on the high one).
    :return: Both density columns with their envelopes. Velocities inside
        oscillatory regions are NaN.
    :raises SolverError: If an interior solve has no root.
    """
    if not t > 0:
        raise DomainError("sampling needs t > 0, got {0!r}".format(t))
    return _sample_z(pattern, x / t, phase, config or RunConfig())


def _sample_z(pattern: WavePattern, z: float, phase: float, config: RunConfig) -> PatternSample:
    index = pattern.locate(z)
    region = pattern.regions[index]
    invariants = _region_invariants(region, z, config)
    columns, m = _columns(pattern, index, region, invariants, phase)
    return PatternSample(z, index, region.kind, invariants, columns, pattern.physical, m)


def _anchor(region: Region) -> Tuple[float, Tuple[float, ...]]:
    # the first wave's soliton edge is on its right, everything else anchors left
    if (
        region.kind is RegionKind.CNOIDAL_DSW
        and region.family is Family.SECOND
        and region.right_value == region.invariants[1]
    ):
        return region.right_speed, region.right_invariants
    return region.left_speed, region.invariants


def soliton_side(region: Region) -> Optional[str]:
    """``"left"`` or ``"right"``: the end of a cnoidal DSW where ``l2 == l3``.

    ``None`` for other regions and for DSWs that reach ``m = 1`` at neither end.
    """
    if region.kind is not RegionKind.CNOIDAL_DSW:
        return None
    for side, inv in (("left", region.invariants), ("right", region.right_invariants)):
        if math.isclose(inv[1], inv[2], rel_tol=1e-12, abs_tol=1e-14):
            return side
    return None


def soliton_edge_speed(region: Region) -> Optional[float]:
    """Speed of the soliton edge of a cnoidal DSW, ``None`` when it has none."""
    side = soliton_side(region)
    if side is None:
        return None
    return region.left_speed if side == "left" else region.right_speed


def _wavenumber(invariants: Sequence[float]) -> float:
    _, L = _shape(ModulationState(*invariants))
    return 0.0 if math.isinf(L) else 2.0 * math.pi / L


def build_profile(
    pattern: WavePattern, xs: Sequence[float], t: float, config: Optional[RunConfig] = None
) -> Dict[str, Any]:
    """Densities of both columns along ``xs`` at time ``t``.

    Inside oscillatory regions the phase is the integral of ``2 pi / L``
    from the soliton edge of the region (from its left edge when it has
    none), so the oscillations are resolved rather than only their
    envelope.
    """
    if not t > 0:
        raise DomainError("profiles need t > 0, got {0!r}".format(t))
    config = config or RunConfig()
    xs = np.asarray(xs, dtype=float)
    zs = xs / t

    def locate(z: float) -> Tuple[int, Tuple[float, ...]]:
        index = pattern.locate(z)
        return index, _region_invariants(pattern.regions[index], z, config)

    with config.executor() as pool:
        located = list(pool.map(locate, zs))

    indices = np.array([index for index, _ in located], dtype=int)
    phases = np.zeros_like(xs)
    for index in np.unique(indices):
        region = pattern.regions[index]
        if not region.kind.oscillatory:
            continue
        members = np.flatnonzero(indices == index)
        speed, edge = _anchor(region)
        anchor = speed * t
        order = members[np.argsort(np.abs(xs[members] - anchor))]
        path = np.concatenate(([anchor], xs[order]))
        k = np.array([_wavenumber(edge)] + [_wavenumber(located[i][1]) for i in order])
        phases[order] = integrate.cumulative_trapezoid(k, path, initial=0.0)[1:]

    out: Dict[str, Any] = {"x": xs, "z": zs, "region": indices, "phase": phases}
    for column in COLUMNS:
        out["rho_" + column] = np.empty_like(xs)
        out["nu_" + column] = np.empty_like(xs)
        out["min_" + column] = np.empty_like(xs)
        out["max_" + column] = np.empty_like(xs)
    for i, (index, invariants) in enumerate(located):
        columns, _ = _columns(pattern, index, pattern.regions[index], invariants, phases[i])
        for column, sample in columns.items():
            out["rho_" + column][i] = sample.rho
            out["nu_" + column][i] = sample.nu
            out["min_" + column][i], out["max_" + column][i] = sample.envelope
    log.debug("profile of %r at t=%r on %d points", pattern, t, xs.size)
    return out
