import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict

from .errors import DomainError

log = logging.getLogger(__name__)

THREADS_ENV = "DSW_LAB_THREADS"


def thread_count() -> int:
    """Worker count for sampling pools, capped by ``DSW_LAB_THREADS``."""
    default = os.cpu_count() or 1
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        log.warning("ignoring %s=%r, not an integer", THREADS_ENV, raw)
        return default
    return max(1, min(value, default))


class SolverConfig:
    """Options of the pseudo-spectral solver and of the measurements on it."""

    __slots__ = (
        "n_points",
        "length",
        "dt",
        "dealias_fraction",
        "smoothing_width",
        "blowup_factor",
        "retries",
        "edge_threshold",
        "vacuum_epsilon",
        "window",
    )

    def __init__(self, **options: Any) -> None:
        self.n_points = int(options.get("n_points", 4096))
        self.length = float(options.get("length", 400.0))
        self.dt = options.get("dt", None)
        self.dealias_fraction = float(options.get("dealias_fraction", 2.0 / 3.0))
        self.smoothing_width = float(options.get("smoothing_width", 0.5))
        self.blowup_factor = float(options.get("blowup_factor", 1e6))
        self.retries = int(options.get("retries", 1))
        self.edge_threshold = float(options.get("edge_threshold", 0.05))
        self.vacuum_epsilon = float(options.get("vacuum_epsilon", 1e-6))
        window = options.get("window", None)
        self.window = None if window is None else float(window)
        if self.length <= 0 or self.smoothing_width <= 0:
            raise DomainError("length and smoothing width must be positive")
        if self.window is not None and self.window <= 0:
            raise DomainError("window must be positive, got {0}".format(self.window))
        if not 0.0 < self.dealias_fraction <= 1.0:
            raise DomainError(
                "dealias fraction must lie in (0, 1], got {0}".format(self.dealias_fraction)
            )
        if self.dt is not None and self.dt <= 0:
            raise DomainError("time step must be positive, got {0}".format(self.dt))

    def replace(self, **changes: Any) -> "SolverConfig":
        options = self.as_dict()
        options.update(changes)
        return SolverConfig(**options)

    def as_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in self.__slots__}

    def __repr__(self) -> str:
        return "<SolverConfig n_points={0.n_points} length={0.length!r} dt={0.dt!r}>".format(self)


class RunConfig:
    """Options of the self-similar constructions."""

    __slots__ = ("threads", "scan_points", "tie_tolerance")

    def __init__(self, **options: Any) -> None:
        self.threads = int(options.get("threads", thread_count()))
        self.scan_points = int(options.get("scan_points", 64))
        self.tie_tolerance = float(options.get("tie_tolerance", 1e-10))
        if self.threads < 1 or self.scan_points < 2:
            raise DomainError("need at least one thread and two scan points")

    def executor(self) -> ThreadPoolExecutor:
        return ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="dswlab")

    def as_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in self.__slots__}

    def __repr__(self) -> str:
        return "<RunConfig threads={0.threads} scan_points={0.scan_points}>".format(self)
