"""Small numeric helpers shared across the package.

Nothing here is mathematically deep; the point is to keep the summation
and phase-reduction conventions in one place so every module that adds
thousands of oscillating terms does it the same way.
"""

from __future__ import annotations

import math
from typing import Iterable, Tuple

import numpy as np

__all__ = [
    "kahan_add",
    "kahan_sum",
    "two_sum",
    "two_product",
    "dd_mul_reduce_2pi",
    "dd_mul_reduce_2pi_vec",
    "phase_exp",
]


def kahan_add(total: float, comp: float, term: float) -> Tuple[float, float]:
    """One step of Kahan compensated summation.

    Args:
        total: Running sum.
        comp: Running compensation (the low-order error so far).
        term: Value to add.

    Returns:
        Updated ``(total, comp)`` pair.
    """
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def kahan_sum(terms: Iterable[float]) -> float:
    """Sum an iterable with Kahan compensation."""
    total = 0.0
    comp = 0.0
    for term in terms:
        total, comp = kahan_add(total, comp, term)
    return total


def two_sum(a: float, b: float) -> Tuple[float, float]:
    """Error-free transformation: a + b = hi + lo exactly."""
    hi = a + b
    v = hi - a
    lo = (a - (hi - v)) + (b - v)
    return hi, lo


_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp splitting constant


def _split(a: float) -> Tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_product(a: float, b: float) -> Tuple[float, float]:
    """Error-free product (Dekker): a * b = hi + lo exactly."""
    hi = a * b
    a1, a2 = _split(a)
    b1, b2 = _split(b)
    lo = ((a1 * b1 - hi) + a1 * b2 + a2 * b1) + a2 * b2
    return hi, lo


_TWO_PI_HI = 6.283185307179586
_TWO_PI_LO = 2.4492935982947064e-16


def dd_mul_reduce_2pi(a: float, b: float) -> float:
    """Compute (a * b) mod 2*pi with a double-double intermediate.

    For phases like gamma * log(x) the raw product can reach 1e8 or
    more, at which point plain double multiplication followed by
    ``math.fmod`` loses several digits of the reduced phase.  Carrying
    the product and the subtracted multiple of 2*pi as unevaluated
    hi + lo pairs keeps the reduced phase accurate to a few ulp.

    The result may sit slightly outside [0, 2*pi); only its value mod
    2*pi is meaningful, which is all sin/cos consumers need.
    """
    hi, lo = two_product(a, b)
    n = math.floor(hi / _TWO_PI_HI)
    if n == 0:
        return hi + lo
    p_hi, p_lo = two_product(float(n), _TWO_PI_HI)
    d_hi, d_lo = two_sum(hi, -p_hi)
    return d_hi + (d_lo + lo - p_lo - n * _TWO_PI_LO)


def dd_mul_reduce_2pi_vec(a: np.ndarray, b: float) -> np.ndarray:
    """Vectorized dd_mul_reduce_2pi for an array of multipliers."""
    a = np.asarray(a, dtype=np.float64)
    hi = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    lo = ((ahi * bhi - hi) + ahi * blo + alo * bhi) + alo * blo
    n = np.floor(hi / _TWO_PI_HI)
    p = n * _TWO_PI_HI
    tn = _SPLITTER * n
    nhi = tn - (tn - n)
    nlo = n - nhi
    p_lo = ((nhi * _TP_HI_HI - p) + nhi * _TP_HI_LO + nlo * _TP_HI_HI) \
        + nlo * _TP_HI_LO
    # Branch-free two-sum of hi + (-p).
    d = hi - p
    v = d - hi
    d_lo = (hi - (d - v)) + (-p - v)
    return d + (d_lo + lo - p_lo - n * _TWO_PI_LO)


# Dekker split of _TWO_PI_HI, precomputed for the vector path.
_TP_HI_HI = _split(_TWO_PI_HI)[0]
_TP_HI_LO = _split(_TWO_PI_HI)[1]


def phase_exp(a: float, b: float) -> complex:
    """exp(i * a * b) with double-double phase reduction."""
    phi = dd_mul_reduce_2pi(a, b)
    return complex(math.cos(phi), math.sin(phi))
