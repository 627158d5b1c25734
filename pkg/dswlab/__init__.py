import importlib.metadata

__title__ = "dswlab"
__author__ = "tiagovla"
__license__ = "GPL-3.0-or-later"
try:
    __version__ = importlib.metadata.version("dswlab.py")
except importlib.metadata.PackageNotFoundError:
    __version__ = "0.1.0"

import logging

from .errors import DSWLabException, InstabilityError, InvalidInput, SolverError
from .config import RunConfig, SolverConfig

__all__ = [
    "DSWLabException",
    "InstabilityError",
    "InvalidInput",
    "RunConfig",
    "SolverConfig",
    "SolverError",
]

from logging import NullHandler

logging.getLogger(__name__).addHandler(NullHandler())

del logging
