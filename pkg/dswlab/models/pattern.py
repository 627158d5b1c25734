import enum
import math
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from . import abc
from .state import DispersionlessPair, HydroState, Interval, MonotonicityBranch, WaveParams
from .. import hydro

#: Output columns, named after the branch of the left state they describe.
COLUMNS = ("upper", "lower")


class Letter(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"


class Side(enum.Enum):
    SAME_SIDE = "same_side"
    CROSS_SIDE = "cross_side"


class RegionKind(enum.Enum):
    PLATEAU = "plateau"
    RAREFACTION = "rarefaction"
    CNOIDAL_DSW = "cnoidal_dsw"
    CONTACT_DSW = "contact_dsw"
    VACUUM = "vacuum"
    PERIODIC = "periodic"

    @property
    def oscillatory(self) -> bool:
        return self in (RegionKind.CNOIDAL_DSW, RegionKind.CONTACT_DSW, RegionKind.PERIODIC)


class Family(enum.Enum):
    """Which invariant a simple wave or shock modulates."""

    FIRST = "i"
    SECOND = "ii"
    DIAGONAL = "diagonal"


class StepData:
    """Riemann initial data: constant states left and right of ``x = 0``."""

    __slots__ = ("left", "right", "left_pair", "right_pair", "left_branch", "right_branch")

    def __init__(self, left: HydroState, right: HydroState) -> None:
        self.left = left
        self.right = right
        self.left_pair = hydro.invariants_from_state(left)
        self.right_pair = hydro.invariants_from_state(right)
        self.left_branch = hydro.branch_of(left)
        self.right_branch = hydro.branch_of(right)

    @classmethod
    def from_values(cls, rho_left: float, nu_left: float, rho_right: float, nu_right: float):
        return cls(HydroState(rho_left, nu_left), HydroState(rho_right, nu_right))

    @property
    def side(self) -> "Side":
        if self.left_branch is self.right_branch:
            return Side.SAME_SIDE
        return Side.CROSS_SIDE

    @property
    def jump(self) -> float:
        return abs(self.left.rho - self.right.rho)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "left": self.left.as_dict(),
            "right": self.right.as_dict(),
            "left_invariants": self.left_pair.as_dict(),
            "right_invariants": self.right_pair.as_dict(),
            "left_branch": self.left_branch.value,
            "right_branch": self.right_branch.value,
        }

    def __repr__(self) -> str:
        return "<StepData left={0.left!r} right={0.right!r}>".format(self)


class PatternCase:
    __slots__ = ("letter", "side")

    def __init__(self, letter: Letter, side: Side) -> None:
        self.letter = letter
        self.side = side

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PatternCase)
            and self.letter is other.letter
            and self.side is other.side
        )

    def __hash__(self) -> int:
        return hash((self.letter, self.side))

    def __str__(self) -> str:
        return "{0.letter.value}/{0.side.value}".format(self)

    def __repr__(self) -> str:
        return "<PatternCase letter={0.letter.value!r} side={0.side.value!r}>".format(self)

    def as_dict(self) -> Dict[str, Any]:
        return {"case": self.letter.value, "side": self.side.value}


class Region(abc.Region):
    """One self-similar region of a wave pattern.

    ``invariants`` holds the Riemann invariants at the left edge of the
    region: a ``(l_minus, l_plus)`` pair for plateaus and simple waves and an
    ordered quadruple for oscillatory regions. ``varying`` lists the
    positions that change across the region; they run from ``left_value``
    at ``left_speed`` to ``right_value`` at ``right_speed``.
    """

    __slots__ = (
        "kind",
        "left_speed",
        "right_speed",
        "invariants",
        "varying",
        "left_value",
        "right_value",
        "family",
        "flipped",
        "intervals",
    )

    def __init__(
        self,
        kind: RegionKind,
        left_speed: float,
        right_speed: float,
        invariants: Sequence[float],
        *,
        varying: Tuple[int, ...] = (),
        right_value: Optional[float] = None,
        family: Optional[Family] = None,
        flipped: bool = False,
        intervals: Optional[Mapping[str, Interval]] = None,
    ) -> None:
        self.kind = kind
        self.left_speed = float(left_speed)
        self.right_speed = float(right_speed)
        self.invariants = tuple(float(v) for v in invariants)
        self.varying = tuple(varying)
        self.left_value = self.invariants[varying[0]] if varying else None
        self.right_value = self.left_value if right_value is None else float(right_value)
        self.family = family
        self.flipped = flipped
        self.intervals = dict(intervals or {})

    @property
    def width(self) -> float:
        return self.right_speed - self.left_speed

    def at(self, value: float) -> Tuple[float, ...]:
        """Return the invariants with the varying positions set to ``value``."""
        out = list(self.invariants)
        for i in self.varying:
            out[i] = value
        return tuple(out)

    @property
    def right_invariants(self) -> Tuple[float, ...]:
        if not self.varying:
            return self.invariants
        return self.at(self.right_value)

    def branch(self, column: str) -> MonotonicityBranch:
        """Return the hydrodynamic branch a column uses inside this region."""
        base = MonotonicityBranch.UPPER if column == "upper" else MonotonicityBranch.LOWER
        return base.opposite() if self.flipped else base

    def kind_for(self, column: str) -> RegionKind:
        """Return the kind seen by one column.

        The fold fan ``l_minus = l_plus`` is a rarefaction with ``nu = 0`` on
        the upper branch and vacuum on the lower one.
        """
        if self.family is not Family.DIAGONAL:
            return self.kind
        if self.branch(column) is MonotonicityBranch.LOWER:
            return RegionKind.VACUUM
        return RegionKind.RAREFACTION

    def as_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "kind": self.kind.value,
            "left_speed": self.left_speed,
            "right_speed": self.right_speed,
            "invariants": list(self.invariants),
        }
        if self.varying:
            data["varying"] = [i + 1 for i in self.varying]
            data["left_value"] = self.left_value
            data["right_value"] = self.right_value
        if self.family is not None:
            data["family"] = self.family.value
        if self.flipped:
            data["flipped"] = True
        if self.intervals:
            data["intervals"] = {k: v.value for k, v in sorted(self.intervals.items())}
        if self.family is Family.DIAGONAL:
            data["column_kinds"] = {c: self.kind_for(c).value for c in COLUMNS}
        return data

    def __repr__(self) -> str:
        return "<Region kind={0.kind.value!r} speeds=({0.left_speed!r}, {0.right_speed!r})>".format(
            self
        )


class VacuumPoint:
    """Self-similar position where a column's density envelope touches zero."""

    __slots__ = ("region", "column", "invariant", "speed")

    def __init__(self, region: int, column: str, invariant: float, speed: float) -> None:
        self.region = region
        self.column = column
        self.invariant = invariant
        self.speed = speed

    def as_dict(self) -> Dict[str, Any]:
        return {
            "region": self.region,
            "column": self.column,
            "invariant": self.invariant,
            "speed": self.speed,
        }

    def __repr__(self) -> str:
        return "<VacuumPoint region={0.region} column={0.column!r} speed={0.speed!r}>".format(
            self
        )


class WavePattern(abc.Pattern):
    """Regions of a step solution, left to right.

    ``nominal_speeds`` are the closed-form speeds ``s1..s4`` (and ``s5`` on
    the cross side) before zero-width regions are dropped;
    :attr:`edge_speeds` are the boundaries between the regions that remain.
    """

    __slots__ = ("case", "step", "regions", "nominal_speeds", "plateaus", "vacuum", "physical")

    def __init__(
        self,
        case: PatternCase,
        step: StepData,
        regions: Sequence[Region],
        nominal_speeds: Sequence[float],
        plateaus: Sequence[DispersionlessPair],
        vacuum: Sequence[VacuumPoint] = (),
    ) -> None:
        self.case = case
        self.step = step
        self.regions = tuple(regions)
        self.nominal_speeds = tuple(float(s) for s in nominal_speeds)
        self.plateaus = tuple(plateaus)
        self.vacuum = tuple(vacuum)
        self.physical = "upper" if step.left_branch is MonotonicityBranch.UPPER else "lower"

    @property
    def edge_speeds(self) -> Tuple[float, ...]:
        return tuple(region.right_speed for region in self.regions[:-1])

    @property
    def vacuum_flags(self) -> Dict[str, bool]:
        flags = {column: False for column in COLUMNS}
        for point in self.vacuum:
            flags[point.column] = True
        return flags

    def locate(self, z: float) -> int:
        """Return the index of the region containing ``z = x / t``."""
        for index, region in enumerate(self.regions):
            if z < region.right_speed:
                return index
        return len(self.regions) - 1

    def as_dict(self) -> Dict[str, Any]:
        data = self.case.as_dict()
        data.update(
            {
                "physical": self.physical,
                "regions": [r.as_dict() for r in self.regions],
                "edge_speeds": list(self.edge_speeds),
                "nominal_speeds": list(self.nominal_speeds),
                "plateaus": [p.as_dict() for p in self.plateaus],
                "vacuum_flags": self.vacuum_flags,
                "vacuum_points": [v.as_dict() for v in self.vacuum],
            }
        )
        return data

    def __repr__(self) -> str:
        return "<WavePattern case={0.case!s} regions={1}>".format(
            self, [r.kind.value for r in self.regions]
        )


class ColumnSample:
    """Density, velocity and envelope of one density mapping at a point."""

    __slots__ = ("rho", "nu", "envelope", "wave")

    def __init__(
        self,
        rho: float,
        nu: float,
        envelope: Tuple[float, float],
        wave: Optional[WaveParams] = None,
    ) -> None:
        self.rho = rho
        self.nu = nu
        self.envelope = envelope
        self.wave = wave

    @classmethod
    def constant(cls, state: HydroState) -> "ColumnSample":
        return cls(state.rho, state.nu, (state.rho, state.rho))

    def __repr__(self) -> str:
        return "<ColumnSample rho={0.rho!r} nu={0.nu!r} envelope={0.envelope!r}>".format(self)


class PatternSample:
    __slots__ = ("z", "region", "kind", "invariants", "m", "columns", "physical")

    def __init__(
        self,
        z: float,
        region: int,
        kind: RegionKind,
        invariants: Tuple[float, ...],
        columns: Mapping[str, ColumnSample],
        physical: str,
        m: Optional[float] = None,
    ) -> None:
        self.z = z
        self.region = region
        self.kind = kind
        self.invariants = invariants
        self.columns = dict(columns)
        self.physical = physical
        self.m = m

    @property
    def rho(self) -> float:
        return self.columns[self.physical].rho

    @property
    def nu(self) -> float:
        return self.columns[self.physical].nu

    @property
    def envelope(self) -> Tuple[float, float]:
        return self.columns[self.physical].envelope

    def state(self) -> HydroState:
        """Return the physical state; only defined outside oscillatory regions."""
        if math.isnan(self.nu):
            raise ValueError("no single hydrodynamic state inside an oscillatory region")
        return HydroState(self.rho, self.nu)

    def __repr__(self) -> str:
        return "<PatternSample z={0.z!r} kind={0.kind.value!r} rho={1!r}>".format(self, self.rho)
