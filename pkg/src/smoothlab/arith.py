"""Integer arithmetic substrate: sieves, smoothness, von Mangoldt, Psi counts.

Everything in this module is exact integer work.  The conventions that
matter downstream:

* "n is y-smooth" means every prime factor p of n satisfies p <= y
  (weak inequality).  Pass ``strict=True`` to flip to p < y.
* Interval enumeration uses the counting-function difference convention:
  smooth_in_interval(x, z, y) lists n with x < n <= x + z.
* All interval endpoints must stay below 2**62; inputs past that are
  rejected rather than silently wrapped.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

__all__ = [
    "SpfSegment",
    "Factorization",
    "sieve_spf_segment",
    "factorize",
    "is_smooth",
    "von_mangoldt",
    "psi_count",
    "smooth_in_interval",
    "d3_count",
    "primes_upto",
]

#: Hard ceiling for every interval endpoint handled here.  Keeps all
#: index arithmetic comfortably inside int64 (and leaves headroom for
#: the p**k stepping used by the divide-out sieve).
INT_CEILING = 1 << 62

# psi_count answers queries with floor(x) below this bound by a direct
# vectorized count over a cached greatest-prime-factor table.
_PSI_LEAF = 10**7


def primes_upto(n: int) -> np.ndarray:
    """All primes p <= n, ascending, as an int64 array (empty if n < 2)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    if n > 10**8:
        raise ValueError(f"prime sieve bound {n} exceeds supported 10^8")
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


# ---------------------------------------------------------------------------
# Smallest-prime-factor segments and factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpfSegment:
    """Smallest prime factors for the window [lo, lo + len(values)).

    ``values[k]`` is the least prime dividing lo + k.  Immutable after
    construction; safe to share across workers.
    """

    lo: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    @property
    def hi(self) -> int:
        """One past the last covered integer."""
        return self.lo + len(self.values)

    def spf(self, n: int) -> int:
        """Smallest prime factor of n, which must lie in the segment."""
        if not (self.lo <= n < self.hi):
            raise ValueError(f"{n} outside segment [{self.lo}, {self.hi})")
        return int(self.values[n - self.lo])


@dataclass(frozen=True)
class Factorization:
    """n together with its prime factorization, ascending primes."""

    n: int
    factors: Tuple[Tuple[int, int], ...]

    @property
    def max_prime(self) -> int:
        """Largest prime factor; 1 for n = 1."""
        return self.factors[-1][0] if self.factors else 1


def sieve_spf_segment(lo: int, length: int) -> SpfSegment:
    """Sieve smallest prime factors over [lo, lo + length).

    Args:
        lo: Segment start, at least 2.
        length: Number of entries, at least 1.

    Returns:
        SpfSegment covering the window.

    Raises:
        ValueError: On bad bounds or endpoints past 2**62.
    """
    if lo < 2 or length < 1:
        raise ValueError("need lo >= 2 and length >= 1")
    hi = lo + length
    if hi > INT_CEILING:
        raise ValueError(f"segment end {hi} exceeds 2^62 ceiling")
    vals = np.zeros(length, dtype=np.int64)
    # Base primes up to sqrt(hi - 1); ascending order means the first
    # prime to claim an entry is its smallest factor.
    for p in primes_upto(math.isqrt(hi - 1)):
        p = int(p)
        first = lo + (-lo) % p
        if first >= hi:
            continue
        window = vals[first - lo :: p]
        window[window == 0] = p
    # Untouched entries have no factor <= sqrt, hence are prime.
    rest = vals == 0
    if rest.any():
        vals[rest] = (np.arange(lo, hi, dtype=np.int64))[rest]
    return SpfSegment(lo=lo, values=vals)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far past the 2^62 ceiling."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor_trial(n: int) -> List[Tuple[int, int]]:
    """Factor by trial division; practical for n with isqrt(n) <= ~10^6."""
    factors: List[Tuple[int, int]] = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
            # A surviving cofactor that passes a primality check needs
            # no further division walk.
            if m > 1 and _is_prime(m):
                break
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return factors


def factorize(n: int, seg: Optional[SpfSegment] = None) -> Factorization:
    """Full prime factorization of n.

    Args:
        n: Positive integer.  n = 1 yields an empty factor list.
        seg: Optional SpfSegment used to peel the smallest factor when n
            lies inside it; otherwise trial division does the work.

    Returns:
        Factorization with primes strictly ascending.

    Raises:
        ValueError: If n < 1.
    """
    if n < 1:
        raise ValueError(f"cannot factor n = {n}")
    if n == 1:
        return Factorization(n=1, factors=())
    if seg is not None and seg.lo <= n < seg.hi:
        p = seg.spf(n)
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        rest = factorize(m, seg).factors if m > 1 else ()
        return Factorization(n=n, factors=((p, e),) + tuple(rest))
    return Factorization(n=n, factors=tuple(_factor_trial(n)))


def is_smooth(n: int, y: float, strict: bool = False) -> bool:
    """True iff every prime factor p of n satisfies p <= y (p < y if strict)."""
    if n < 1:
        raise ValueError("is_smooth needs n >= 1")
    m = n
    d = 2
    while m > 1:
        if d * d > m:
            # m itself is prime.
            return m < y if strict else m <= y
        if (d >= y) if strict else (d > y):
            return False
        while m % d == 0:
            m //= d
        d += 1 if d == 2 else 2
    return True


def von_mangoldt(n: int) -> float:
    """Lambda(n): log p when n = p^k, else 0."""
    if n < 1:
        raise ValueError("von_mangoldt needs n >= 1")
    if n == 1:
        return 0.0
    # Small factor, if any, decides everything: n must then be a power
    # of that prime.
    m = n
    d = 2
    while d * d <= m and d <= 10**4:
        if m % d == 0:
            while m % d == 0:
                m //= d
            return math.log(d) if m == 1 else 0.0
        d += 1 if d == 2 else 2
    if d * d > n:
        return math.log(n)  # trial walk proved n prime
    if _is_prime(n):
        return float(math.log(n))
    # No factor <= 10^4 and composite: only powers p^k with p > 10^4
    # and k >= 2 remain.
    for k in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == n and _is_prime(cand):
                return float(math.log(cand))
    return 0.0


# ---------------------------------------------------------------------------
# Psi(x, y): exact smooth-number counting
# ---------------------------------------------------------------------------

_gpf_lock = threading.Lock()
_gpf_table: Optional[np.ndarray] = None  # greatest prime factor, index 0..N


def _gpf_upto(n: int) -> np.ndarray:
    """Cached greatest-prime-factor table covering at least [1, n]."""
    global _gpf_table
    tab = _gpf_table
    if tab is not None and len(tab) > n:
        return tab
    with _gpf_lock:
        tab = _gpf_table
        if tab is not None and len(tab) > n:
            return tab
        size = min(max(n, 10**6), _PSI_LEAF)
        g = np.zeros(size + 1, dtype=np.int32)
        g[1] = 1
        for p in primes_upto(size):
            g[p::p] = p  # ascending overwrite leaves the largest prime
        g.setflags(write=False)
        _gpf_table = g
        return g


def psi_count(x: float, y: float, strict: bool = False) -> int:
    """Exact Psi(x, y): the number of y-smooth n <= x.

    Uses the recursion Psi(x, y) = 1 + sum over primes p <= y of
    Psi(x/p, p), memoized on (floor of the quotient, prime index), with
    leaves below 10^7 answered by a direct count against a cached
    greatest-prime-factor table.

    Args:
        x: Upper limit, >= 1.
        y: Smoothness bound, >= 2.
        strict: Count n whose prime factors are < y instead of <= y.

    Returns:
        The exact count, as a Python int.

    Raises:
        ValueError: Out-of-range x or y (x > 2^62, or an effective
            smoothness bound past 10^7 alongside x > 10^7).
    """
    if x < 1 or y < 2:
        raise ValueError("psi_count needs x >= 1 and y >= 2")
    if x > INT_CEILING:
        raise ValueError(f"x = {x} exceeds 2^62 ceiling")
    xf = math.floor(x)
    if xf <= _PSI_LEAF:
        g = _gpf_upto(xf)
        window = g[1 : xf + 1]
        bound = y if not strict else np.nextafter(y, -np.inf)
        return int(np.count_nonzero(window <= bound))

    y_eff = min(float(y), float(xf))
    if y_eff > _PSI_LEAF:
        raise ValueError("psi_count supports min(x, y) <= 10^7 when x > 10^7")
    primes = [int(p) for p in primes_upto(math.floor(y_eff))]
    if strict and primes and primes[-1] == y:
        primes.pop()
    g = _gpf_upto(_PSI_LEAF)
    memo: dict = {}

    def rec(xq: int, k: int) -> int:
        # Psi(xq, primes[k]) with xq already floored.
        if xq <= _PSI_LEAF:
            key = (xq, k)
            got = memo.get(key)
            if got is None:
                got = int(np.count_nonzero(g[1 : xq + 1] <= primes[k]))
                memo[key] = got
            return got
        key = (xq, k)
        got = memo.get(key)
        if got is not None:
            return got
        total = 1
        for j in range(k + 1):
            p = primes[j]
            if p > xq:
                break
            total += rec(xq // p, j)
        memo[key] = total
        return total

    total = 1
    for j, p in enumerate(primes):
        if p > xf:
            break
        total += rec(xf // p, j)
    return total


# ---------------------------------------------------------------------------
# Interval enumeration
# ---------------------------------------------------------------------------

_CHUNK = 1 << 20


def smooth_in_interval(x: float, z: float, y: float,
                       strict: bool = False) -> List[int]:
    """Ascending list of y-smooth integers n with x < n <= x + z.

    Sieves by dividing every prime power p^k (p <= y, p^k <= x + z) out
    of each residue class; integers reduced to 1 are exactly the smooth
    ones.  Work proceeds in fixed-size chunks so memory stays flat and
    results do not depend on chunk boundaries.

    Args:
        x: Left endpoint (exclusive), >= 2.
        z: Interval length, >= 1.
        y: Smoothness bound, >= 2.
        strict: Use p < y membership instead of p <= y.

    Returns:
        List of Python ints.

    Raises:
        ValueError: Bad bounds, or x + z beyond the 2^62 ceiling.
    """
    if x < 2 or z < 1 or y < 2:
        raise ValueError("need x >= 2, z >= 1, y >= 2")
    if x + z > INT_CEILING:
        raise ValueError("interval endpoint exceeds 2^62 ceiling")
    lo = math.floor(x) + 1
    hi = math.floor(x + z)
    if hi < lo:
        return []
    y_eff = min(float(y), float(hi))
    pbound = math.floor(y_eff)
    if strict and pbound == y_eff and pbound == y:
        pbound -= 1
    plist = [int(p) for p in primes_upto(pbound)]

    out: List[int] = []
    a = lo
    while a <= hi:
        b = min(a + _CHUNK - 1, hi)
        orig = np.arange(a, b + 1, dtype=np.int64)
        res = orig.copy()
        for p in plist:
            q = p
            while q <= b:
                first = a + (-a) % q
                if first <= b:
                    res[first - a :: q] //= p
                q *= p
        out.extend(int(v) for v in orig[res == 1])
        a = b + 1
    return out


def d3_count(n: int) -> int:
    """Number of ordered triples (a, b, c) with a*b*c = n."""
    f = factorize(n)
    total = 1
    for _, e in f.factors:
        total *= (e + 1) * (e + 2) // 2
    return total
