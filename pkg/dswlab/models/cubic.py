from typing import Any, Dict, Tuple

from . import abc
from .state import _slack
from ..errors import DomainError


class CubicBreakData(abc.State):
    """Background invariants of a cubic-root breaking profile."""

    __slots__ = ("l_minus", "l_plus")

    def __init__(self, l_minus: float, l_plus: float) -> None:
        if l_minus < -_slack(l_minus) or l_plus < l_minus:
            raise DomainError(
                "breaking data must satisfy 0 <= l_minus <= l_plus, got ({0}, {1})".format(
                    l_minus, l_plus
                )
            )
        self.l_minus = max(float(l_minus), 0.0)
        self.l_plus = float(l_plus)

    def as_dict(self) -> Dict[str, Any]:
        return {"l_minus": self.l_minus, "l_plus": self.l_plus}

    def __repr__(self) -> str:
        return "<CubicBreakData l_minus={0.l_minus!r} l_plus={0.l_plus!r}>".format(self)


class HodographCoeffs(abc.State):
    __slots__ = ("c0", "c1", "c2", "c3")

    def __init__(self, c0: float, c1: float, c2: float, c3: float) -> None:
        self.c0 = c0
        self.c1 = c1
        self.c2 = c2
        self.c3 = c3

    def astuple(self) -> Tuple[float, float, float, float]:
        return (self.c0, self.c1, self.c2, self.c3)

    def as_dict(self) -> Dict[str, Any]:
        return {"c0": self.c0, "c1": self.c1, "c2": self.c2, "c3": self.c3}

    def __repr__(self) -> str:
        return "<HodographCoeffs c0={0.c0!r} c1={0.c1!r} c2={0.c2!r} c3={0.c3!r}>".format(self)
