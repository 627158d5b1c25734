from typing import Any, Dict

import numpy as np

from . import abc
from ..errors import DomainError
from ..types import ComplexArray, RealArray


class Grid(abc.State):
    """Uniform periodic grid on ``[-length / 2, length / 2)``."""

    __slots__ = ("n_points", "length", "nodes", "wavenumbers")

    def __init__(self, n_points: int, length: float) -> None:
        if n_points < 8 or n_points & (n_points - 1):
            raise DomainError("n_points must be a power of two >= 8, got {0}".format(n_points))
        if not length > 0:
            raise DomainError("length must be positive, got {0}".format(length))
        self.n_points = int(n_points)
        self.length = float(length)
        nodes = -0.5 * self.length + self.spacing * np.arange(self.n_points)
        nodes.setflags(write=False)
        self.nodes = nodes
        k = 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing)
        k.setflags(write=False)
        self.wavenumbers = k

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    def dealias_mask(self, fraction: float) -> RealArray:
        """Return the 0/1 mask keeping ``|k| <= fraction * k_max``."""
        kmax = np.pi / self.spacing
        return (np.abs(self.wavenumbers) <= fraction * kmax).astype(float)

    def as_dict(self) -> Dict[str, Any]:
        return {"n_points": self.n_points, "length": self.length}

    def __repr__(self) -> str:
        return "<Grid n_points={0.n_points!r} length={0.length!r}>".format(self)


class FieldState(abc.State):
    """Snapshot of the complex field on a grid. The array is read-only."""

    __slots__ = ("grid", "u", "time")

    def __init__(self, grid: Grid, u: ComplexArray, time: float = 0.0) -> None:
        u = np.array(u, dtype=np.complex128)
        if u.shape != (grid.n_points,):
            raise DomainError(
                "field has shape {0}, grid expects ({1},)".format(u.shape, grid.n_points)
            )
        u.setflags(write=False)
        self.grid = grid
        self.u = u
        self.time = float(time)

    @property
    def rho(self) -> RealArray:
        return np.abs(self.u) ** 2

    @property
    def mass(self) -> float:
        return float(np.sum(self.rho) * self.grid.spacing)

    def advanced(self, u: ComplexArray, dt: float) -> "FieldState":
        return FieldState(self.grid, u, self.time + dt)

    def as_dict(self) -> Dict[str, Any]:
        return {"grid": self.grid.as_dict(), "time": self.time, "mass": self.mass}

    def __repr__(self) -> str:
        return "<FieldState time={0.time!r} grid={0.grid!r}>".format(self)
