"""Characteristic velocities of the one-phase modulation system.

The general expressions hold for ``0 < m < 1``. Close to a merge of two
invariants they lose precision, so :func:`whitham_velocities` switches to
the closed-form limits once the relevant gap ratio drops below
:data:`SWITCH`:

* ``l2 -> l1`` (harmonic, lower pair merged),
* ``l3 -> l4`` (harmonic, upper pair merged),
* ``l2 -> l3`` (soliton, ``m -> 1``), for the merged pair ``v2 = v3``
  only; ``v1`` and ``v4`` keep the general expressions until ``m = 1``.
"""

import logging

from . import hydro, onephase, specfun
from .models.state import ModulationState
from .types import Quadruple

log = logging.getLogger(__name__)

#: Gap ratio below which a closed-form limit replaces the general formula.
SWITCH = 1e-8

_EXACT = 1e-14


def _base(l1: float, l2: float, l3: float, l4: float) -> float:
    s1 = l1 + l2 + l3 + l4
    s2 = l1 * (l2 + l3 + l4) + l2 * (l3 + l4) + l3 * l4
    return 2.0 * s2 - 1.5 * s1 * s1


def whitham_velocities_general(ms: ModulationState) -> Quadruple:
    """Evaluate the elliptic expressions without any limit switching.

    :param ms: Modulation state with ``0 < m < 1``.
    :return: ``(v1, v2, v3, v4)``.
    """
    l1, l2, l3, l4 = ms.invariants
    m, m1 = onephase.modulus(ms)
    K = specfun.ellip_K(m, m1)
    E = specfun.ellip_E(m, m1)
    base = _base(l1, l2, l3, l4)
    v1 = base - 2.0 * (l1 - l2) * (l1 - l4) * (3 * l1 + l2 + l3 + l4) * K / (
        (l4 - l2) * E + (l1 - l4) * K
    )
    v2 = base - 2.0 * (l1 - l2) * (l2 - l3) * (l1 + 3 * l2 + l3 + l4) * K / (
        (l1 - l3) * E + (l3 - l2) * K
    )
    v3 = base - 2.0 * (l3 - l4) * (l2 - l3) * (l1 + l2 + 3 * l3 + l4) * K / (
        (l4 - l2) * E + (l2 - l3) * K
    )
    v4 = base - 2.0 * (l1 - l4) * (l4 - l3) * (l1 + l2 + l3 + 3 * l4) * K / (
        (l3 - l1) * E + (l1 - l4) * K
    )
    return (v1, v2, v3, v4)


def soliton_velocity(l1: float, l3: float, l4: float) -> float:
    """Common value of ``v2 = v3`` at ``l2 = l3``: the soliton speed."""
    return 0.5 * (
        -3.0 * l1 * l1
        - 8.0 * l3 * l3
        - 4.0 * l3 * l4
        - 3.0 * l4 * l4
        - 2.0 * l1 * (2.0 * l3 + l4)
    )


def harmonic_velocity_lower(l1: float, l3: float, l4: float) -> float:
    """Common value of ``v1 = v2`` at ``l1 = l2``."""
    d = l3 - l4
    s = l3 + l4
    num = 48.0 * l1**3 - 6.0 * l1 * d * d - 24.0 * l1 * l1 * s - 3.0 * d * d * s
    den = 4.0 * l1 - 2.0 * s
    if den == 0.0:
        return -12.0 * l1 * l1
    return -num / den


def harmonic_velocity_upper(l1: float, l2: float, l4: float) -> float:
    """Common value of ``v3 = v4`` at ``l3 = l4``."""
    den = 2.0 * l4 - l1 - l2
    if den == 0.0:
        return -12.0 * l4 * l4
    d = l1 - l2
    return -12.0 * l4 * l4 + 1.5 * d * d * (2.0 * l4 + l1 + l2) / den


def printed_harmonic_limit(l1: float, l2: float, l4: float) -> float:
    """``v3 = v4`` at ``l3 = l4`` with the correction term added.

    This is the sign commonly quoted for the limit. It does not match the
    ``l3 -> l4`` limit of the elliptic expressions and is only kept to
    compare against.
    """
    correction = 4.0 * (l1 - l4) * (l4 - l2) * (l1 + l2 + 4.0 * l4) / (l1 + l2 - 2.0 * l4)
    return _base(l1, l2, l4, l4) + correction


def _soliton(l1: float, l3: float, l4: float) -> Quadruple:
    v = soliton_velocity(l1, l3, l4)
    return (hydro.v_minus(l1, l4), v, v, hydro.v_plus(l1, l4))


def _lower(l1: float, l3: float, l4: float) -> Quadruple:
    v = harmonic_velocity_lower(l1, l3, l4)
    return (v, v, hydro.v_minus(l3, l4), hydro.v_plus(l3, l4))


def _upper(l1: float, l2: float, l4: float) -> Quadruple:
    v = harmonic_velocity_upper(l1, l2, l4)
    return (hydro.v_minus(l1, l2), hydro.v_plus(l1, l2), v, v)


def whitham_velocities(ms: ModulationState) -> Quadruple:
    """Return ``(v1, v2, v3, v4)`` for any ordered quadruple.

    Merged pairs are evaluated at their midpoint. Full degeneracy
    ``l1 = l4`` gives ``-12 l^2`` for all four.
    """
    l1, l2, l3, l4 = ms.invariants
    tiny = _EXACT * max(1.0, l4)
    if l4 - l1 <= tiny:
        c = 0.5 * (l1 + l4)
        return (-12.0 * c * c,) * 4
    if l3 - l1 <= tiny:
        return _lower(l1, 0.5 * (l1 + l3), l4)
    if l4 - l2 <= tiny:
        return _upper(l1, 0.5 * (l2 + l4), l4)

    g12 = (l2 - l1) / (l3 - l1)
    g34 = (l4 - l3) / (l4 - l2)
    if min(g12, g34) < SWITCH:
        if g12 <= g34:
            return _lower(0.5 * (l1 + l2), l3, l4)
        return _upper(l1, l2, 0.5 * (l3 + l4))
    _, m1 = onephase.modulus(ms)
    if m1 < SWITCH:
        # v1 and v4 reach their limits only like 1 / ln(m1)
        limit = _soliton(l1, 0.5 * (l2 + l3), l4)
        if m1 <= 0.0:
            return limit
        v1, _, _, v4 = whitham_velocities_general(ms)
        return (v1, limit[1], limit[2], v4)
    return whitham_velocities_general(ms)


