"""Dickman's rho to high accuracy via its delay differential equation.

rho solves u * rho'(u) = -rho(u - 1) with rho = 1 on [0, 1], which is
equivalent to the Volterra form

    rho(u) = (1/u) * integral of rho(t) dt over [u - 1, u].

The table builder uses the closed form on [0, 2] (rho = 1, then
1 - log u) and advances the Volterra form on a uniform grid for u > 2
with composite Simpson quadrature.  The grid step divides 1 exactly, so
every window [u - 1, u] spans a whole number of panels and the integer
breakpoints of rho (where higher derivatives jump) always land on grid
nodes, never inside a Simpson panel.

Accumulation is done in numpy's extended precision (80-bit on x86) so
that values near 1e-30 at the far end of the table keep full relative
accuracy; rho(u/2) is used as a denominator downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["RhoTable", "build_rho_table", "rho", "rho_asymptotic_report"]

DEFAULT_STEP = 1.0 / 1024.0
DEFAULT_U_MAX = 50.0


@dataclass(frozen=True)
class RhoTable:
    """Grid samples of rho: values[k] = rho(k * step), 0 <= k*step <= u_max."""

    step: float
    values: np.ndarray = field(repr=False)  # longdouble
    u_max: float

    def __post_init__(self) -> None:
        self.values.setflags(write=False)


def build_rho_table(step: float = DEFAULT_STEP,
                    u_max: float = DEFAULT_U_MAX) -> RhoTable:
    """Construct the rho grid by Simpson marching of the Volterra form.

    Args:
        step: Grid spacing; 1/step must be an even integer so that each
            unit window holds an even panel count and integer kinks sit
            on nodes.
        u_max: Last grid abscissa (must be a multiple of step).

    Returns:
        Immutable RhoTable.
    """
    per_unit = round(1.0 / step)
    if per_unit < 4 or per_unit % 2 != 0 or abs(per_unit * step - 1.0) > 1e-12:
        raise ValueError("step must be 1/m for an even integer m >= 4")
    n = round(u_max / step)
    if abs(n * step - u_max) > 1e-9 or n < 2 * per_unit:
        raise ValueError("u_max must be a multiple of step and at least 2")

    ld = np.longdouble
    vals = np.empty(n + 1, dtype=ld)
    h = ld(1.0) / ld(per_unit)
    u_grid = np.arange(n + 1, dtype=ld) * h

    # Closed forms: 1 on [0, 1], 1 - log u on [1, 2].
    vals[: per_unit + 1] = ld(1.0)
    seg = u_grid[per_unit : 2 * per_unit + 1]
    vals[per_unit : 2 * per_unit + 1] = ld(1.0) - np.log(seg)

    # Simpson weights over one unit window, 1 4 2 4 ... 2 4 1.
    w = np.empty(per_unit + 1, dtype=ld)
    w[0::2] = ld(2.0)
    w[1::2] = ld(4.0)
    w[0] = ld(1.0)
    w[per_unit] = ld(1.0)
    w_known = w[:-1]  # the last node of each window is the unknown

    third = h / ld(3.0)
    for k in range(2 * per_unit + 1, n + 1):
        window = vals[k - per_unit : k]
        s = np.dot(w_known, window)
        u_k = u_grid[k]
        # rho(u) * u = (h/3) * (S + rho(u)); solve for rho(u).
        vals[k] = third * s / (u_k - third)

    vals.setflags(write=False)
    return RhoTable(step=float(h), values=vals, u_max=float(u_max))


def rho(u: float, table: RhoTable) -> float:
    """Evaluate rho(u) from the table.

    Closed forms on [0, 2]; elsewhere 4-point Lagrange interpolation on
    grid values, with the stencil kept inside the unit piece containing
    u (rho is analytic between consecutive integers but not across
    them).

    Args:
        u: Argument in [0, u_max].
        table: Grid built by build_rho_table.

    Returns:
        rho(u) as a double.

    Raises:
        ValueError: u outside [0, u_max].
    """
    if not (0.0 <= u <= table.u_max):
        raise ValueError(f"u = {u} outside [0, {table.u_max}]")
    if u <= 1.0:
        return 1.0
    if u <= 2.0:
        return float(1.0 - math.log(u))

    per_unit = round(1.0 / table.step)
    n = len(table.values) - 1
    t = u / table.step  # fractional grid index
    piece = min(int(math.floor(u)), int(table.u_max) - 1)
    lo_k = piece * per_unit
    hi_k = min((piece + 1) * per_unit, n)
    k0 = int(math.floor(t)) - 1
    k0 = max(lo_k, min(k0, hi_k - 3))

    # 4-point Lagrange on equally spaced nodes k0 .. k0+3.
    s = t - k0  # in node units, normally within [1, 2]
    f = table.values[k0 : k0 + 4]
    c0 = -(s - 1) * (s - 2) * (s - 3) / 6.0
    c1 = s * (s - 2) * (s - 3) / 2.0
    c2 = -s * (s - 1) * (s - 3) / 2.0
    c3 = s * (s - 1) * (s - 2) / 6.0
    return float(np.longdouble(c0) * f[0] + np.longdouble(c1) * f[1]
                 + np.longdouble(c2) * f[2] + np.longdouble(c3) * f[3])


def rho_asymptotic_report(u: float) -> float:
    """Crude comparator u**(-u/2) used in reports next to rho(u/2)."""
    if u < 2:
        raise ValueError("asymptotic comparator defined for u >= 2")
    return math.exp(-0.5 * u * math.log(u))
