"""Complete elliptic integrals and Jacobi elliptic functions.

All functions take the parameter ``m`` (not the modulus ``k = sqrt(m)``).
K and E use the arithmetic-geometric mean, sn/cn/dn use the descending
Landen transformation. Close to ``m = 1`` the leading asymptotic forms take
over. Callers that know ``1 - m`` more accurately than ``m`` itself (the
Whitham velocities near the soliton edge) can pass it as ``m1``.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from .errors import DomainError
from .types import ArrayOrReal

log = logging.getLogger(__name__)

#: Below this value of ``1 - m`` the logarithmic asymptotics are used.
NEAR_ONE = 1e-10

_EPS = 1e-16
_MAX_ITER = 64


def _complement(m: float, m1: Optional[float]) -> float:
    if m1 is None:
        return 1.0 - m
    return m1


def _check(m: float) -> None:
    if not math.isfinite(m) or m < 0.0 or m > 1.0:
        raise DomainError("elliptic parameter must lie in [0, 1], got {0!r}".format(m))


def _agm_sequence(m1: float) -> Tuple[List[float], List[float]]:
    """Return the AGM sequences ``a_n`` and ``c_n`` starting from ``(1, sqrt(m1))``."""
    a = 1.0
    b = math.sqrt(m1)
    c = math.sqrt(1.0 - m1)
    aa = [a]
    cc = [c]
    for _ in range(_MAX_ITER):
        if abs(c) <= _EPS * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        aa.append(a)
        cc.append(c)
    return aa, cc


def ellip_K(m: float, m1: Optional[float] = None) -> float:
    """Complete elliptic integral of the first kind.

    :param m: Parameter, ``0 <= m < 1``.
    :param m1: Optional complementary parameter ``1 - m``.
    :return: ``K(m)``.
    :raises DomainError: If ``m`` is outside ``[0, 1)``.
    """
    _check(m)
    m1 = _complement(m, m1)
    if m1 <= 0.0:
        raise DomainError("K(m) diverges at m = 1")
    if m1 < NEAR_ONE:
        lead = 0.5 * math.log(16.0 / m1)
        return lead + 0.25 * m1 * (lead - 1.0)
    aa, _ = _agm_sequence(m1)
    return math.pi / (2.0 * aa[-1])


def ellip_E(m: float, m1: Optional[float] = None) -> float:
    """Complete elliptic integral of the second kind.

    :param m: Parameter, ``0 <= m <= 1``.
    :param m1: Optional complementary parameter ``1 - m``.
    :return: ``E(m)``.
    :raises DomainError: If ``m`` is outside ``[0, 1]``.
    """
    _check(m)
    m1 = _complement(m, m1)
    if m1 <= 0.0:
        return 1.0
    if m1 < NEAR_ONE:
        return 1.0 + 0.5 * m1 * (0.5 * math.log(16.0 / m1) - 0.5)
    aa, cc = _agm_sequence(m1)
    total = sum(2.0 ** (n - 1) * c * c for n, c in enumerate(cc))
    return math.pi / (2.0 * aa[-1]) * (1.0 - total)


def ellip_K_derivative(m: float, m1: Optional[float] = None) -> float:
    """Return ``dK/dm = (E - (1 - m) K) / (2 m (1 - m))``."""
    _check(m)
    m1 = _complement(m, m1)
    if m1 <= 0.0:
        raise DomainError("dK/dm diverges at m = 1")
    if m < 1e-8:
        return math.pi / 8.0 * (1.0 + 1.125 * m)
    k = ellip_K(m, m1)
    e = ellip_E(m, m1)
    return (e - m1 * k) / (2.0 * m * m1)


def jacobi_sn_cn_dn(
    u: ArrayOrReal, m: float, m1: Optional[float] = None
) -> Tuple[ArrayOrReal, ArrayOrReal, ArrayOrReal]:
    """Jacobi elliptic functions ``sn``, ``cn`` and ``dn``.

    ``u`` may be a scalar or an array; the result has the same shape.
    """
    _check(m)
    m1 = _complement(m, m1)
    x = np.asarray(u, dtype=float)
    if m1 < NEAR_ONE:
        sn, cn, dn = _near_one(x, m1)
    elif m < _EPS:
        sn, cn, dn = np.sin(x), np.cos(x), np.ones_like(x)
    else:
        sn, cn, dn = _landen(x, m, m1)
    if np.ndim(u) == 0:
        return float(sn), float(cn), float(dn)
    return sn, cn, dn


def _landen(x: np.ndarray, m: float, m1: float):
    aa, cc = _agm_sequence(m1)
    n = len(aa) - 1
    phi = (2.0**n) * aa[-1] * x
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(cc[k] / aa[k] * np.sin(phi)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    # 1 - m sn^2 written without cancellation, finite where cn = 0
    dn = np.sqrt(m1 + m * cn * cn)
    return sn, cn, dn


def _near_one(x: np.ndarray, m1: float):
    if m1 <= 0.0:
        sech = 1.0 / np.cosh(x)
        return np.tanh(x), sech, sech.copy()
    # reduce to [-K, K] with the half-period shift sn, cn -> -sn, -cn
    half = 2.0 * ellip_K(1.0 - m1, m1)
    turns = np.round(x / half)
    r = x - half * turns
    sign = np.where(np.mod(turns, 2.0) == 0.0, 1.0, -1.0)
    tanh = np.tanh(r)
    sech = 1.0 / np.cosh(r)
    sc = np.sinh(r) * np.cosh(r)
    sn = tanh + 0.25 * m1 * (sc - r) * sech * sech
    cn = sech - 0.25 * m1 * (sc - r) * tanh * sech
    dn = sech + 0.25 * m1 * (sc + r) * tanh * sech
    return sign * sn, sign * cn, dn
