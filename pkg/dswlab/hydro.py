"""Madelung hydrodynamics of the dispersionless limit.

Density ``rho`` and velocity ``nu`` map to the Riemann invariants
``l_minus <= l_plus``; the map folds along ``rho = 2 nu``, so going back
needs a :class:`MonotonicityBranch`.
"""

import logging
import math
from typing import Tuple

from .errors import DomainError
from .models.state import DispersionlessPair, HydroState, MonotonicityBranch

log = logging.getLogger(__name__)


def branch_of(state: HydroState) -> MonotonicityBranch:
    """Return the branch of ``state``; the fold line itself counts as upper."""
    if state.rho >= 2.0 * state.nu:
        return MonotonicityBranch.UPPER
    return MonotonicityBranch.LOWER


def invariants_from_state(state: HydroState) -> DispersionlessPair:
    """Riemann invariants ``l = (sqrt(rho) +- sqrt(2 nu))^2 / 4``."""
    if state.rho < 0 or state.nu < 0:
        raise DomainError("negative density or velocity: {0!r}".format(state))
    a = math.sqrt(state.rho)
    b = math.sqrt(2.0 * state.nu)
    return DispersionlessPair(0.25 * (a - b) ** 2, 0.25 * (a + b) ** 2)


def state_from_invariants(pair: DispersionlessPair, branch: MonotonicityBranch) -> HydroState:
    sp = math.sqrt(pair.l_plus)
    sm = math.sqrt(pair.l_minus)
    if branch is MonotonicityBranch.UPPER:
        return HydroState((sp + sm) ** 2, 0.5 * (sp - sm) ** 2)
    return HydroState((sp - sm) ** 2, 0.5 * (sp + sm) ** 2)


def char_velocities(pair: DispersionlessPair) -> Tuple[float, float]:
    """Return ``(v_minus, v_plus)`` of the dispersionless system."""
    return v_minus(pair.l_minus, pair.l_plus), v_plus(pair.l_minus, pair.l_plus)


def v_plus(l_minus: float, l_plus: float) -> float:
    return -1.5 * (5.0 * l_plus * l_plus + 2.0 * l_plus * l_minus + l_minus * l_minus)


def v_minus(l_minus: float, l_plus: float) -> float:
    return -1.5 * (5.0 * l_minus * l_minus + 2.0 * l_plus * l_minus + l_plus * l_plus)


def _invert(fixed: float, z: float) -> float:
    # admissible root of 5 l^2 + 2 l fixed + fixed^2 = -2 z / 3
    disc = -4.0 * fixed * fixed - 10.0 * z / 3.0
    if disc < 0:
        if disc > -1e-12 * max(1.0, fixed * fixed):
            disc = 0.0
        else:
            raise DomainError("speed {0!r} is not reached by the simple wave".format(z))
    return max((-fixed + math.sqrt(disc)) / 5.0, 0.0)


def rarefaction_l_plus(l_minus: float, z: float) -> float:
    """Varying ``l_plus`` of a first-family rarefaction at ``z = x / t``."""
    return _invert(l_minus, z)


def rarefaction_l_minus(l_plus: float, z: float) -> float:
    """Varying ``l_minus`` of a second-family rarefaction at ``z = x / t``."""
    return _invert(l_plus, z)


def diagonal_invariant(z: float) -> float:
    """Common value ``l_minus = l_plus`` on the fold fan, where ``v = -12 l^2``."""
    if z > 0:
        raise DomainError("the fold fan only carries z <= 0, got {0!r}".format(z))
    return math.sqrt(-z / 12.0)
