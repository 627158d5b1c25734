from .state import (
    DispersionlessPair,
    HydroState,
    Interval,
    ModulationState,
    MonotonicityBranch,
    SignBranch,
    WaveParams,
)
from .pattern import (
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
from .field import FieldState, Grid
from .cubic import CubicBreakData, HodographCoeffs

__all__ = [
    "ColumnSample",
    "CubicBreakData",
    "DispersionlessPair",
    "Family",
    "FieldState",
    "Grid",
    "HodographCoeffs",
    "HydroState",
    "Interval",
    "Letter",
    "ModulationState",
    "MonotonicityBranch",
    "PatternCase",
    "PatternSample",
    "Region",
    "RegionKind",
    "Side",
    "SignBranch",
    "StepData",
    "VacuumPoint",
    "WaveParams",
    "WavePattern",
]
