"""One-phase periodic solutions parametrized by four Riemann invariants."""

import enum
import logging
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from . import specfun
from .errors import DegenerateConfiguration, PreconditionError
from .models.state import DispersionlessPair, Interval, ModulationState, SignBranch, WaveParams
from .types import ArrayOrReal, Quadruple

log = logging.getLogger(__name__)

#: Relative gap below which two turning points are treated as merged.
MERGE_TOLERANCE = 1e-8


class LimitKind(enum.Enum):
    SOLITON = "soliton"
    TRIG = "trig"


def _roots(ms: ModulationState) -> Quadruple:
    return tuple(math.sqrt(l) for l in ms.invariants)


def wave_params(ms: ModulationState, interval: Interval = Interval.LOW) -> WaveParams:
    """Map the invariants onto the sorted turning-point densities."""
    a, b, c, d = _roots(ms)
    if ms.sign_branch is SignBranch.UPPER_SIGNS:
        rhos = (
            (a + b + c - d) ** 2,
            (a + b - c + d) ** 2,
            (a - b + c + d) ** 2,
            (-a + b + c + d) ** 2,
        )
    else:
        rhos = (
            (-a + b + c - d) ** 2,
            (a - b + c - d) ** 2,
            (a + b - c - d) ** 2,
            (a + b + c + d) ** 2,
        )
    return WaveParams(*sorted(rhos), interval=interval)


def modulus(ms: ModulationState) -> Tuple[float, float]:
    """Return ``(m, 1 - m)``, both computed without cancellation."""
    l1, l2, l3, l4 = ms.invariants
    den = (l3 - l1) * (l4 - l2)
    if den <= 0.0:
        raise DegenerateConfiguration(
            "modulus undefined for l1 = l3 or l2 = l4: {0}".format(ms.invariants)
        )
    return (l2 - l1) * (l4 - l3) / den, (l3 - l2) * (l4 - l1) / den


def modulus_and_wavelength(ms: ModulationState) -> Tuple[float, float]:
    """Elliptic parameter and wavelength of the one-phase wave.

    :param ms: Modulation state with ``l1 < l3`` and ``l2 < l4``.
    :return: ``(m, L)``; ``L`` is infinite at the soliton limit.
    :raises DegenerateConfiguration: If the wavelength is undefined.
    """
    l1, l2, l3, l4 = ms.invariants
    m, m1 = modulus(ms)
    if m1 <= 0.0:
        return 1.0, math.inf
    return m, 2.0 * specfun.ellip_K(m, m1) / math.sqrt((l4 - l2) * (l3 - l1))


def _wave_modulus(wp: WaveParams) -> Tuple[float, float]:
    r1, r2, r3, r4 = wp.roots
    den = (r3 - r1) * (r4 - r2)
    if den <= 0.0:
        return 0.0, 1.0
    return (r2 - r1) * (r4 - r3) / den, (r3 - r2) * (r4 - r1) / den


def phase_scale(wp: WaveParams) -> float:
    """Factor turning the phase ``xi`` into the elliptic argument."""
    r1, r2, r3, r4 = wp.roots
    return 0.25 * math.sqrt(max((r3 - r1) * (r4 - r2), 0.0))


def _rational(sn2: ArrayOrReal, wp: WaveParams) -> ArrayOrReal:
    r1, r2, r3, r4 = wp.roots
    if wp.interval is Interval.LOW:
        c, d = r4 - r2, r2 - r1
        top, bottom = r1 * c + r4 * d * sn2, c + d * sn2
        flat = r1
    else:
        p, q = r3 - r1, r4 - r3
        top, bottom = r4 * p + r1 * q * sn2, p + q * sn2
        flat = r4
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(np.abs(bottom) > 0.0, top / np.where(bottom == 0.0, 1.0, bottom), flat)
    if np.ndim(out) == 0:
        return float(out)
    return out


def density_profile(xi: ArrayOrReal, wp: WaveParams, m: Optional[float] = None) -> ArrayOrReal:
    """Density of the periodic wave at phase ``xi``.

    The low interval starts at its minimum ``rho1`` and the high interval at
    its maximum ``rho4``; both have period ``L`` in ``xi``.
    """
    if m is None:
        m, m1 = _wave_modulus(wp)
    else:
        m1 = 1.0 - m
    omega = phase_scale(wp) * np.asarray(xi, dtype=float)
    sn = specfun.jacobi_sn_cn_dn(omega, m, m1)[0]
    return _rational(np.square(sn), wp)


def _close(a: float, b: float, scale: float) -> bool:
    return abs(a - b) <= MERGE_TOLERANCE * max(1.0, scale)


def limit_profiles(wp: WaveParams, kind: LimitKind) -> Callable[[ArrayOrReal], ArrayOrReal]:
    """Closed-form profile of a degenerate wave.

    :param wp: Turning points; ``rho2 = rho3`` for solitons, ``rho1 = rho2``
        or ``rho3 = rho4`` for trigonometric waves.
    :param kind: Which limit to build.
    :return: Density as a function of ``xi``.
    :raises PreconditionError: If ``wp`` lacks the required degeneracy.
    """
    r1, r2, r3, r4 = wp.roots
    scale = phase_scale(wp)
    if kind is LimitKind.SOLITON:
        if not _close(r2, r3, r4):
            raise PreconditionError("soliton limit needs rho2 = rho3, got {0!r}".format(wp))

        def profile(xi):
            return _rational(np.tanh(scale * np.asarray(xi, dtype=float)) ** 2, wp)

        return profile
    if not (_close(r1, r2, r4) or _close(r3, r4, r4)):
        raise PreconditionError(
            "trigonometric limit needs rho1 = rho2 or rho3 = rho4, got {0!r}".format(wp)
        )

    def profile(xi):
        return _rational(np.sin(scale * np.asarray(xi, dtype=float)) ** 2, wp)

    return profile


def printed_soliton_profile(wp: WaveParams) -> Callable[[ArrayOrReal], ArrayOrReal]:
    """Soliton limit in the form usually quoted for this wave family.

    Kept for comparison only: its center value is not a turning point.
    """
    r1, r2, r3, r4 = wp.roots
    scale = phase_scale(wp)

    def profile(xi):
        w = scale * np.asarray(xi, dtype=float)
        sech2 = 1.0 / np.cosh(w) ** 2
        tanh2 = np.tanh(w) ** 2
        if wp.interval is Interval.LOW:
            return (r1 * (r4 - r2) + r4 * (r2 - r1) * sech2) / (r4 - r2 + (r2 - r1) * tanh2)
        return (r3 * (r1 - r4) - r1 * (r3 - r4) * sech2) / (r1 - r4 + (r4 - r3) * tanh2)

    return profile


def quartic_R(rho: ArrayOrReal, wp: WaveParams) -> ArrayOrReal:
    r1, r2, r3, r4 = wp.roots
    return (rho - r1) * (rho - r2) * (rho - r3) * (rho - r4)


def phase_velocity(ms: ModulationState) -> float:
    """``V = 2 sum_{i<j} l_i l_j - 3/2 (sum l_i)^2``."""
    l = ms.invariants
    s1 = sum(l)
    s2 = sum(l[i] * l[j] for i in range(4) for j in range(i + 1, 4))
    return 2.0 * s2 - 1.5 * s1 * s1


def wavelength_derivatives(ms: ModulationState) -> Tuple[float, float, float, float]:
    """Return ``d ln L / d l_i`` for ``i = 1..4``.

    Uses ``dK/dm`` analytically. At the soliton limit the derivatives with
    respect to ``l2`` and ``l3`` diverge and are returned as ``+inf``
    and ``-inf``.
    """
    l1, l2, l3, l4 = ms.invariants
    m, m1 = modulus(ms)
    d31 = l3 - l1
    d42 = l4 - l2
    dm = (
        -(l4 - l3) * (l3 - l2) / (d31 * d31 * d42),
        (l4 - l3) * (l4 - l1) / (d31 * d42 * d42),
        -(l2 - l1) * (l4 - l1) / (d31 * d31 * d42),
        (l2 - l1) * (l3 - l2) / (d31 * d42 * d42),
    )
    prefactor = (0.5 / d31, 0.5 / d42, -0.5 / d31, -0.5 / d42)
    if m1 <= 0.0:
        return (prefactor[0], math.inf, -math.inf, prefactor[3])
    ratio = specfun.ellip_K_derivative(m, m1) / specfun.ellip_K(m, m1)
    return tuple(ratio * dm[i] + prefactor[i] for i in range(4))


def dispersionless_pair(
    invariants: Sequence[float], tol: float = 1e-8
) -> Optional[DispersionlessPair]:
    """Reduce a degenerate quadruple to the pair it matches, or ``None``."""
    if len(invariants) == 2:
        return DispersionlessPair(*invariants)
    l1, l2, l3, l4 = invariants
    scale = max(1.0, l4)
    if l2 - l1 <= tol * scale:
        return DispersionlessPair(l3, l4)
    if l4 - l3 <= tol * scale:
        return DispersionlessPair(l1, l2)
    if l3 - l2 <= tol * scale:
        return DispersionlessPair(l1, l4)
    return None


def profile_interval(sign_branch: SignBranch, merged: int, *, contact: bool = False) -> Interval:
    """Interval that a wave fills next to a merged pair of invariants.

    ``merged`` is 1 when ``l1 = l2`` and 3 when ``l3 = l4``. Away from a
    contact the wave uses the interval that collapses at the merge, so the
    amplitude vanishes there; a contact wave uses the other one.
    """
    if merged == 3:
        return Interval.LOW
    collapsing = Interval.HIGH if sign_branch is SignBranch.UPPER_SIGNS else Interval.LOW
    if not contact:
        return collapsing
    return Interval.LOW if collapsing is Interval.HIGH else Interval.HIGH
