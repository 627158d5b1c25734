from typing import Callable, Tuple, Union

import numpy as np
import numpy.typing as npt

Real = Union[float, np.floating]
RealArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]
ArrayOrReal = Union[Real, RealArray]

Quadruple = Tuple[float, float, float, float]
VelocityPair = Tuple[float, float]
Profile = Callable[[ArrayOrReal], ArrayOrReal]
