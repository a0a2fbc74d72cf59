"""Smooth-support Dirichlet polynomial M(s) and its mean values.

M(s) = sum of n^(-s) over y-smooth n in [sqrt(x) * y^(-1/3),
sqrt(x) * y^(-1/4)], with unit coefficients.  This module builds the
support, evaluates M anywhere in the complex plane, and computes
mean-square integrals on vertical lines together with the standard
mean-value comparator.

Convention that matters: mean_square_integral integrates |M(sigma+it)|^2
over the symmetric set {t : t_lo <= |t| <= t_hi}, i.e. both half-lines.
That is the convention under which the diagonal contribution of [t_lo,
t_hi] = [0, T] equals 2*T*sum(n^(-2*sigma)) and under which the
mean-value comparator (2T + 3*pi*n_max)*sum(n^(-2*sigma)) is an upper
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .arith import smooth_in_interval
from .dickman import RhoTable, rho
from .numutil import dd_mul_reduce_2pi_vec

__all__ = [
    "SmoothParams",
    "SupportSet",
    "DirichletPoly",
    "build_support",
    "m_eval",
    "m_eval_many",
    "m1_lower_bound_check",
    "mean_square_integral",
    "mv_bound",
]


@dataclass(frozen=True)
class SmoothParams:
    """Instance parameters (x, y) with interval length z and its delta.

    delta is tied to z by x * e^(2*delta) = x + z, i.e.
    delta = log1p(z/x) / 2.  u = log x / log y.
    """

    x: float
    y: float
    u: float
    delta: float
    z: float

    def __post_init__(self) -> None:
        if not (self.x >= self.y >= 2):
            raise ValueError("need x >= y >= 2")
        if not (self.delta > 0 and self.z > 0):
            raise ValueError("need positive z and delta")

    @classmethod
    def from_xyz(cls, x: float, y: float, z: float) -> "SmoothParams":
        """Build from an interval length z; delta derived."""
        u = math.log(x) / math.log(y)
        return cls(x=x, y=y, u=u, delta=0.5 * math.log1p(z / x), z=z)

    @classmethod
    def from_delta(cls, x: float, y: float, delta: float) -> "SmoothParams":
        """Build from delta; z derived as x * (e^(2 delta) - 1)."""
        u = math.log(x) / math.log(y)
        return cls(x=x, y=y, u=u, delta=delta, z=x * math.expm1(2.0 * delta))

    def theorem_range_ok(self) -> bool:
        """Whether y >= exp(5 * sqrt(log x * log log x)).

        Reported, never enforced: the condition holds only for
        astronomically large x, far beyond every desk-scale instance
        this toolkit runs.
        """
        lx = math.log(self.x)
        return self.y >= math.exp(5.0 * math.sqrt(lx * math.log(lx)))


@dataclass(frozen=True)
class SupportSet:
    """y-smooth integers in [ceil(lo_real), floor(hi_real)], ascending."""

    members: Tuple[int, ...]
    lo_real: float
    hi_real: float

    @property
    def n_min(self) -> int:
        return self.members[0] if self.members else 0

    @property
    def n_max(self) -> int:
        return self.members[-1] if self.members else 0

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DirichletPoly:
    """Unit-coefficient Dirichlet polynomial on a smooth support."""

    support: SupportSet

    @property
    def members(self) -> Tuple[int, ...]:
        return self.support.members


def build_support(params: SmoothParams, strict: bool = False) -> SupportSet:
    """Enumerate the support [sqrt(x)*y^(-1/3), sqrt(x)*y^(-1/4)].

    Endpoints are rounded inward (ceil the lower, floor the upper) so
    the integer set stays inside the real interval.  An empty range is
    legal and yields an empty set.
    """
    sx = math.sqrt(params.x)
    lo = sx * params.y ** (-1.0 / 3.0)
    hi = sx * params.y ** (-0.25)
    if lo < 2.0:
        raise ValueError(f"support lower endpoint {lo:.3f} below 2")
    lo_n = math.ceil(lo)
    hi_n = math.floor(hi)
    if hi_n < lo_n:
        return SupportSet(members=(), lo_real=lo, hi_real=hi)
    members = smooth_in_interval(lo_n - 1, hi_n - lo_n + 1, params.y,
                                 strict=strict)
    return SupportSet(members=tuple(members), lo_real=lo, hi_real=hi)


def m_eval(poly: DirichletPoly, s: complex) -> complex:
    """M(s) = sum over the support of n^(-s), exactly rounded per part.

    Uses math.fsum on real and imaginary parts, with double-double
    phase reduction of t*log(n), so results are reproducible and
    accurate for |Im s| well past 1e5.
    """
    members = poly.members
    if not members:
        return 0.0 + 0.0j
    s = complex(s)
    t = s.imag
    res = []
    ims = []
    for n in members:
        ln = math.log(n)
        amp = math.exp(-s.real * ln)
        if t == 0.0:
            res.append(amp)
            ims.append(0.0)
            continue
        phi = -dd_mul_reduce_2pi_vec(np.array([t]), ln)[0]
        res.append(amp * math.cos(phi))
        ims.append(amp * math.sin(phi))
    return complex(math.fsum(res), math.fsum(ims))


def m_eval_many(poly: DirichletPoly, sigma: float,
                ts: np.ndarray) -> np.ndarray:
    """Vectorized M(sigma + i*t) over an array of ordinates t.

    Work is blocked internally at a fixed size, so results do not
    depend on how callers batch their requests.
    """
    members = poly.members
    ts = np.asarray(ts, dtype=np.float64)
    out = np.zeros(ts.shape, dtype=np.complex128)
    if not members:
        return out
    ns = np.array(members, dtype=np.float64)
    logs = np.log(ns)
    amps = np.exp(-sigma * logs)
    block = 4096
    for i in range(0, len(ts), block):
        tb = ts[i : i + block]
        acc = np.zeros(len(tb), dtype=np.complex128)
        for ln, amp in zip(logs, amps):
            phi = dd_mul_reduce_2pi_vec(tb, ln)
            acc += amp * (np.cos(phi) - 1j * np.sin(phi))
        out[i : i + block] = acc
    return out


def m1_lower_bound_check(params: SmoothParams, poly: DirichletPoly,
                         rho_table: RhoTable) -> Dict[str, object]:
    """Compare M(1) against rho(u/2) * log(y) / 24.

    The inequality is asymptotic in x, so the flag is informational:
    reports carry the ratio, and small instances may legitimately fail.
    """
    m1 = m_eval(poly, 1.0).real
    bound = rho(params.u / 2.0, rho_table) * math.log(params.y) / 24.0
    ratio = m1 / bound if bound > 0 else math.inf
    return {
        "m1": m1,
        "lower_bound": bound,
        "ratio": ratio,
        "passed": m1 >= bound,
    }


def _max_step(support: SupportSet) -> float:
    return 0.05 / math.log(support.n_max / support.n_min + 2.0)


def mean_square_integral(poly: DirichletPoly, sigma: float, t_lo: float,
                         t_hi: float, step: Optional[float] = None,
                         threads: int = 1) -> float:
    """Composite-Simpson integral of |M(sigma+it)|^2 over t_lo <= |t| <= t_hi.

    Args:
        poly: The polynomial.
        sigma: Real part of the line.
        t_lo: Lower end of |t| (commonly 0).
        t_hi: Upper end of |t|.
        step: Node spacing; defaults to 0.05/log(n_max/n_min + 2) and
            is rejected if coarser than that (the integrand's highest
            frequency is log(n_max/n_min)).
        threads: Worker cap for panel evaluation; the fixed block
            layout makes the result independent of this value.

    Returns:
        The two-sided integral (equal to twice the one-sided one by
        conjugate symmetry).
    """
    if not (t_lo < t_hi):
        raise ValueError("need t_lo < t_hi")
    if t_lo < 0:
        raise ValueError("t_lo is a bound on |t|; need t_lo >= 0")
    if not poly.members:
        return 0.0
    allowed = _max_step(poly.support)
    if step is None:
        step = allowed
    if step <= 0 or step > allowed * (1 + 1e-12):
        raise ValueError(
            f"step {step} too coarse for support bandwidth; need <= {allowed}")

    panels = max(2, math.ceil((t_hi - t_lo) / step))
    if panels % 2:
        panels += 1
    h = (t_hi - t_lo) / panels
    ts = t_lo + h * np.arange(panels + 1)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        block = 1 << 14
        chunks = [ts[i : i + block] for i in range(0, len(ts), block)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: m_eval_many(poly, sigma, c),
                                  chunks))
        vals = np.concatenate(parts)
    else:
        vals = m_eval_many(poly, sigma, ts)
    f = (vals.real**2 + vals.imag**2)

    w = np.full(panels + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    one_sided = (h / 3.0) * math.fsum(w * f)
    return 2.0 * one_sided


def mv_bound(poly: DirichletPoly, sigma: float, T: float) -> float:
    """Mean-value comparator (2T + 3*pi*n_max) * sum(n^(-2*sigma))."""
    if T <= 0:
        raise ValueError("need T > 0")
    members = poly.members
    if not members:
        return 0.0
    s2 = math.fsum(n ** (-2.0 * sigma) for n in members)
    return (2.0 * T + 3.0 * math.pi * poly.support.n_max) * s2
