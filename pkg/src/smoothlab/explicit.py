"""Two-sided evaluation of the central weighted sum I and related objects.

I is a von Mangoldt sum over a short interval, weighted by the MINLOG
tent and a double smooth-support convolution:

    I = sum over n in (x, x*e^(2*delta)]  of
        sum over factorizations n = r*m1*m2, m1, m2 in the support, of
        Lambda(r) * min(log(x*e^(2*delta)/n), log(n/x))

The same quantity has an analytic expansion: a main term
x*(e^delta - 1)^2 * M(1)^2, minus a sum over zeta zeros of
M(rho)^2 * x^rho * ((e^(delta*rho) - 1)/rho)^2, minus a left-line
integral which is never computed here, only budgeted.  IReport carries
both sides and their relative gap, which shrinks as the zero-sum
truncation height grows.

All zero sums assume the ordinates lie on the critical line and fold
conjugate pairs analytically (each gamma > 0 contributes twice the real
part), so reported partial sums are real by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .arith import is_smooth, primes_upto, von_mangoldt
from .dickman import RhoTable, rho
from .dirichlet import DirichletPoly, SmoothParams, SupportSet, m_eval, \
    m_eval_many
from .numutil import dd_mul_reduce_2pi_vec
from .zeros import ZeroTable

__all__ = [
    "ContourSpec",
    "IReport",
    "IREPORT_CSV_FIELDS",
    "arithmetic_side_i",
    "main_term_i",
    "zero_sum_i",
    "i_two_sided",
    "zero_sum_sin",
    "j2_closed_form",
    "theorem_z",
]


@dataclass(frozen=True)
class ContourSpec:
    """Right-line abscissa and zero-sum truncation height."""

    c: float
    t_zeros: float

    def __post_init__(self) -> None:
        if not self.c > 1.0:
            raise ValueError("need c > 1")
        if not self.t_zeros > 0:
            raise ValueError("need t_zeros > 0")

    @classmethod
    def for_params(cls, params: SmoothParams,
                   t_zeros: float) -> "ContourSpec":
        return cls(c=1.0 + 1.0 / math.log(params.x), t_zeros=t_zeros)


#: Field order used by IReport.to_csv_row / csv_header.
IREPORT_CSV_FIELDS = ("arithmetic", "main_term", "zero_sum", "analytic",
                      "leftline_budget", "relative_gap")


@dataclass(frozen=True)
class IReport:
    arithmetic: float
    main_term: float
    zero_sum: float
    analytic: float
    leftline_budget: float
    relative_gap: float

    def to_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in IREPORT_CSV_FIELDS}

    @staticmethod
    def csv_header() -> str:
        return ",".join(IREPORT_CSV_FIELDS)

    def to_csv_row(self) -> str:
        return ",".join(f"{getattr(self, name):.17g}"
                        for name in IREPORT_CSV_FIELDS)


def _lambda_sieve(limit: int) -> Tuple[np.ndarray, np.ndarray]:
    """Arrays (Lambda(n), base prime of n) for n <= limit; 0 where composite."""
    lam = np.zeros(limit + 1, dtype=np.float64)
    base = np.zeros(limit + 1, dtype=np.int64)
    for p in primes_upto(limit):
        p = int(p)
        lp = math.log(p)
        q = p
        while q <= limit:
            lam[q] = lp
            base[q] = p
            q *= p
    return lam, base


def arithmetic_side_i(params: SmoothParams, support: SupportSet) -> float:
    """Exact arithmetic side of I via the (m1, m2, r) triple loop.

    Complexity is |support|^2 plus one Lambda value per surviving
    triple; the interval (x, x + z] is never enumerated integer by
    integer.  The sum is math.fsum of all nonzero terms, so the result
    is independent of loop order and bit-identical to any oracle that
    produces the same term multiset.

    Raises:
        ValueError: Interval endpoint past 2^62, or a contributing
            prime-power cofactor r that is not y-smooth (cannot happen
            when 2*delta <= (1/3) log y, i.e. on every sane instance).
    """
    members = support.members
    if not members:
        return 0.0
    x = params.x
    hi = x + params.z
    if hi > float(1 << 62):
        raise ValueError("interval endpoint exceeds 2^62 ceiling")
    two_delta = 2.0 * params.delta

    n_min = members[0]
    r_cap = int(math.floor(hi / (n_min * n_min))) + 1
    lam, base = _lambda_sieve(max(r_cap, 4))

    terms: List[float] = []
    for i, m1 in enumerate(members):
        for m2 in members[i:]:
            # Unordered pair (m1, m2) stands for both ordered pairs.
            mult = 1.0 if m1 == m2 else 2.0
            d = m1 * m2
            rl = int(math.floor(x / d)) + 1
            while rl > 1 and (rl - 1) * d > x:
                rl -= 1
            while rl * d <= x:
                rl += 1
            rh = int(math.floor(hi / d))
            while rh * d > hi:
                rh -= 1
            while (rh + 1) * d <= hi:
                rh += 1
            if rh >= r_cap:
                raise AssertionError("Lambda sieve bound too small")
            for r in range(max(rl, 2), rh + 1):
                lv = lam[r]
                if lv <= 0.0:
                    continue
                if base[r] > params.y:
                    raise ValueError(
                        f"contributor n = {r}*{m1}*{m2} is not "
                        f"{params.y}-smooth; instance outside the "
                        "supported regime")
                n = r * d
                ln = math.log(n / x)
                w = min(two_delta - ln, ln)
                if w > 0.0:
                    if mult == 2.0:
                        terms.append(lv * w)
                        terms.append(lv * w)
                    else:
                        terms.append(lv * w)
    return math.fsum(terms)


def main_term_i(params: SmoothParams, poly: DirichletPoly) -> float:
    """Main term x * (e^delta - 1)^2 * M(1)^2."""
    m1 = m_eval(poly, 1.0).real
    e = math.expm1(params.delta)
    return params.x * e * e * m1 * m1


def zero_sum_i(params: SmoothParams, poly: DirichletPoly, zeros: ZeroTable,
               spec: ContourSpec, threads: int = 1) -> Tuple[float, float]:
    """Partial zero sum of the analytic side, folded over conjugates.

    Sums 2 * Re[ M(rho)^2 * x^rho * ((e^(delta*rho) - 1)/rho)^2 ] over
    rho = 1/2 + i*gamma, 0 < gamma <= t_zeros, from the largest gamma
    down (ascending term magnitude), with exact blockwise fsum so the
    result does not depend on the worker count.

    Returns:
        (partial sum, magnitude of the final conjugate pair's term).

    Raises:
        ValueError: Empty zero table, or t_zeros past the table height.
    """
    if len(zeros) == 0:
        raise ValueError("zero sum needs a nonempty zero table")
    if spec.t_zeros > zeros.max_height * (1 + 1e-12):
        raise ValueError(
            f"t_zeros = {spec.t_zeros} beyond table height "
            f"{zeros.max_height}")
    gam = zeros.upto(spec.t_zeros)
    if gam.size == 0 or not poly.members:
        return 0.0, 0.0

    gdesc = gam[::-1].copy()
    lx = math.log(params.x)
    sx = math.sqrt(params.x)
    delta = params.delta
    ehalf = math.exp(0.5 * delta)

    def block_terms(g: np.ndarray) -> np.ndarray:
        mrho = m_eval_many(poly, 0.5, g)
        rho_s = 0.5 + 1j * g
        phi = dd_mul_reduce_2pi_vec(g, lx)
        xrho = sx * (np.cos(phi) + 1j * np.sin(phi))
        ed = ehalf * (np.cos(delta * g) + 1j * np.sin(delta * g)) - 1.0
        frac = ed / rho_s
        return 2.0 * (mrho * mrho * xrho * frac * frac).real

    block = 4096
    chunks = [gdesc[i : i + block] for i in range(0, gdesc.size, block)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(block_terms, chunks))
    else:
        parts = [block_terms(c) for c in chunks]
    total = math.fsum(math.fsum(p) for p in parts)

    g_last = float(gam[-1])
    m_last = m_eval(poly, complex(0.5, g_last))
    rho_last = complex(0.5, g_last)
    phi_last = float(dd_mul_reduce_2pi_vec(np.array([g_last]), lx)[0])
    x_last = sx * complex(math.cos(phi_last), math.sin(phi_last))
    ed = ehalf * complex(math.cos(delta * g_last),
                         math.sin(delta * g_last)) - 1.0
    frac = ed / rho_last
    last_mag = 2.0 * abs(m_last * m_last * x_last * frac * frac)
    return total, last_mag


def i_two_sided(params: SmoothParams, support: SupportSet,
                poly: DirichletPoly, zeros: ZeroTable, spec: ContourSpec,
                threads: int = 1) -> IReport:
    """Both sides of I plus the left-line budget and the relative gap.

    The left-line integral is only bounded: its budget is
    delta^2 * log x * sqrt(x/y) * (sqrt(x)/y^(1/4) + 1/delta) * M(1)
    with constant 1, carried for scale comparison in reports.
    """
    arith = arithmetic_side_i(params, support)
    main = main_term_i(params, poly)
    zsum, _last = zero_sum_i(params, poly, zeros, spec, threads=threads)
    analytic = main - zsum
    m1 = m_eval(poly, 1.0).real
    budget = (params.delta**2 * math.log(params.x)
              * math.sqrt(params.x / params.y)
              * (math.sqrt(params.x) / params.y**0.25 + 1.0 / params.delta)
              * m1)
    gap = abs(arith - analytic) / max(abs(arith), 1e-300)
    if arith == 0.0 and analytic == 0.0:
        gap = 0.0
    return IReport(arithmetic=arith, main_term=main, zero_sum=zsum,
                   analytic=analytic, leftline_budget=budget,
                   relative_gap=gap)


def zero_sum_sin(poly: DirichletPoly, zeros: ZeroTable, delta: float,
                 T: float, threads: int = 1) -> float:
    """Nonnegative zero sum 2 * sum |M(1/2+i*gamma)|^2 (2 sin(delta*gamma)/gamma)^2.

    Partial sum over 0 < gamma <= T, doubled for the conjugate zeros.
    Monotone nondecreasing in T.
    """
    if len(zeros) == 0:
        raise ValueError("zero sum needs a nonempty zero table")
    if delta <= 0:
        raise ValueError("need delta > 0")
    gam = zeros.upto(T)
    if gam.size == 0 or not poly.members:
        return 0.0

    def block_terms(g: np.ndarray) -> np.ndarray:
        m = m_eval_many(poly, 0.5, g)
        m2 = m.real**2 + m.imag**2
        f = 2.0 * np.sin(delta * g) / g
        return m2 * f * f

    block = 4096
    chunks = [gam[i : i + block] for i in range(0, gam.size, block)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(block_terms, chunks))
    else:
        parts = [block_terms(c) for c in chunks]
    return 2.0 * math.fsum(math.fsum(p) for p in parts)


def j2_closed_form(params: SmoothParams, support: SupportSet) -> float:
    """-2*delta * sum over m2 of (1/m2) * sum of Lambda(m2/m1), m1 | m2.

    Both m1 and m2 run over the support; only proper divisors with a
    prime-power quotient contribute.  Always <= 0.
    """
    members = support.members
    total = []
    for m2 in members:
        for m1 in members:
            if m1 >= m2:
                break
            if m2 % m1 == 0:
                lv = von_mangoldt(m2 // m1)
                if lv > 0.0:
                    total.append(lv / m2)
    return -2.0 * params.delta * math.fsum(total) + 0.0


def theorem_z(x: float, y: float, B: float,
              rho_table: RhoTable) -> Dict[str, object]:
    """Interval length z = B * u * sqrt(x) / rho(u/2) and its delta.

    Also reports whether 1/delta >= sqrt(x)/y^(1/4) holds for the
    constructed instance (it does asymptotically but usually not at
    desk scale, where rho(u/2) is nowhere near its limit behavior) and
    whether (x, y) meets the asymptotic range condition.

    Raises:
        ValueError: x < y, u/2 beyond the rho table, or rho underflow
            (rebuild the table with a higher u_max / extended precision
            ladder before retrying).
    """
    if not (x >= y >= 2):
        raise ValueError("need x >= y >= 2")
    u = math.log(x) / math.log(y)
    if u / 2.0 > rho_table.u_max:
        raise ValueError(f"u/2 = {u/2:.2f} beyond rho table u_max")
    rho_half = rho(u / 2.0, rho_table)
    if rho_half < 1e-300:
        raise ValueError("rho(u/2) underflowed; use a higher-precision "
                         "rho table before computing z at this depth")
    z = B * u * math.sqrt(x) / rho_half
    params = SmoothParams.from_xyz(x, y, z)
    inv_delta_ok = 1.0 / params.delta >= math.sqrt(x) / y**0.25
    return {
        "x": x,
        "y": y,
        "B": B,
        "u": u,
        "rho_half": rho_half,
        "z": z,
        "delta": params.delta,
        "inv_delta_check": inv_delta_ok,
        "theorem_range_ok": params.theorem_range_ok(),
    }
