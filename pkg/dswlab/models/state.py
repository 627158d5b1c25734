import enum
import math
from typing import Any, Dict, Tuple

from . import abc
from ..errors import DomainError

#: Slack allowed on ordering checks of values produced by root solves.
ORDER_TOLERANCE = 1e-12


def _slack(*values: float) -> float:
    return ORDER_TOLERANCE * max(1.0, *(abs(v) for v in values))


class MonotonicityBranch(enum.Enum):
    """Side of the line rho = 2 nu."""

    UPPER = "upper"
    LOWER = "lower"

    def opposite(self) -> "MonotonicityBranch":
        if self is MonotonicityBranch.UPPER:
            return MonotonicityBranch.LOWER
        return MonotonicityBranch.UPPER


class SignBranch(enum.Enum):
    """Sign rows of the invariant-to-turning-point mapping."""

    UPPER_SIGNS = "upper"
    LOWER_SIGNS = "lower"


class Interval(enum.Enum):
    LOW = "low"
    HIGH = "high"


class HydroState(abc.State):
    """Density and velocity of the Madelung hydrodynamics."""

    __slots__ = ("rho", "nu")

    def __init__(self, rho: float, nu: float) -> None:
        if not (math.isfinite(rho) and math.isfinite(nu)):
            raise DomainError("state must be finite, got rho={0} nu={1}".format(rho, nu))
        if rho < 0 or nu < 0:
            raise DomainError(
                "state outside the hyperbolicity domain: rho={0} nu={1}".format(rho, nu)
            )
        self.rho = float(rho)
        self.nu = float(nu)

    def as_dict(self) -> Dict[str, Any]:
        return {"rho": self.rho, "nu": self.nu}

    def __repr__(self) -> str:
        return "<HydroState rho={0.rho!r} nu={0.nu!r}>".format(self)


class DispersionlessPair(abc.State):
    """Riemann invariants ``l_minus <= l_plus`` of the dispersionless flow."""

    __slots__ = ("l_minus", "l_plus")

    def __init__(self, l_minus: float, l_plus: float) -> None:
        slack = _slack(l_minus, l_plus)
        if l_minus < -slack or l_plus < l_minus - slack:
            raise DomainError(
                "invariants must satisfy l_plus >= l_minus >= 0, got ({0}, {1})".format(
                    l_minus, l_plus
                )
            )
        self.l_minus = max(float(l_minus), 0.0)
        self.l_plus = max(float(l_plus), self.l_minus)

    def astuple(self) -> Tuple[float, float]:
        return (self.l_minus, self.l_plus)

    def as_dict(self) -> Dict[str, Any]:
        return {"l_minus": self.l_minus, "l_plus": self.l_plus}

    def __repr__(self) -> str:
        return "<DispersionlessPair l_minus={0.l_minus!r} l_plus={0.l_plus!r}>".format(
            self
        )


class ModulationState(abc.State):
    """Ordered Riemann invariants of a one-phase wave."""

    __slots__ = ("l1", "l2", "l3", "l4", "sign_branch")

    def __init__(
        self,
        l1: float,
        l2: float,
        l3: float,
        l4: float,
        sign_branch: SignBranch = SignBranch.UPPER_SIGNS,
    ) -> None:
        slack = _slack(l1, l2, l3, l4)
        if l1 < -slack or l2 < l1 - slack or l3 < l2 - slack or l4 < l3 - slack:
            raise DomainError(
                "invariants must satisfy 0 <= l1 <= l2 <= l3 <= l4, got {0}".format(
                    (l1, l2, l3, l4)
                )
            )
        l1 = max(float(l1), 0.0)
        l2 = max(float(l2), l1)
        l3 = max(float(l3), l2)
        self.l1 = l1
        self.l2 = l2
        self.l3 = l3
        self.l4 = max(float(l4), l3)
        self.sign_branch = sign_branch

    @property
    def invariants(self) -> Tuple[float, float, float, float]:
        return (self.l1, self.l2, self.l3, self.l4)

    def with_branch(self, sign_branch: SignBranch) -> "ModulationState":
        return ModulationState(*self.invariants, sign_branch=sign_branch)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "l1": self.l1,
            "l2": self.l2,
            "l3": self.l3,
            "l4": self.l4,
            "sign_branch": self.sign_branch.value,
        }

    def __repr__(self) -> str:
        return (
            "<ModulationState l1={0.l1!r} l2={0.l2!r} l3={0.l3!r} l4={0.l4!r} "
            "sign_branch={0.sign_branch.value!r}>"
        ).format(self)


class WaveParams(abc.State):
    """Turning-point densities of a one-phase wave and the interval it fills."""

    __slots__ = ("rho1", "rho2", "rho3", "rho4", "interval")

    def __init__(
        self,
        rho1: float,
        rho2: float,
        rho3: float,
        rho4: float,
        interval: Interval = Interval.LOW,
    ) -> None:
        slack = _slack(rho1, rho2, rho3, rho4)
        if rho1 < -slack or rho2 < rho1 - slack or rho3 < rho2 - slack or rho4 < rho3 - slack:
            raise DomainError(
                "turning points must be sorted and non-negative, got {0}".format(
                    (rho1, rho2, rho3, rho4)
                )
            )
        self.rho1 = max(float(rho1), 0.0)
        self.rho2 = max(float(rho2), self.rho1)
        self.rho3 = max(float(rho3), self.rho2)
        self.rho4 = max(float(rho4), self.rho3)
        self.interval = interval

    @property
    def roots(self) -> Tuple[float, float, float, float]:
        return (self.rho1, self.rho2, self.rho3, self.rho4)

    def with_interval(self, interval: Interval) -> "WaveParams":
        return WaveParams(*self.roots, interval=interval)

    @property
    def envelope(self) -> Tuple[float, float]:
        """Return the (min, max) density of the oscillation."""
        if self.interval is Interval.LOW:
            return (self.rho1, self.rho2)
        return (self.rho3, self.rho4)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "rho1": self.rho1,
            "rho2": self.rho2,
            "rho3": self.rho3,
            "rho4": self.rho4,
            "interval": self.interval.value,
        }

    def __repr__(self) -> str:
        return (
            "<WaveParams rho=({0.rho1!r}, {0.rho2!r}, {0.rho3!r}, {0.rho4!r}) "
            "interval={0.interval.value!r}>"
        ).format(self)
