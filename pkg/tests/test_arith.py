import math
import random

import pytest

from smoothlab.arith import (d3_count, factorize, is_smooth, primes_upto,
                             psi_count, sieve_spf_segment, smooth_in_interval,
                             von_mangoldt)


def brute_is_smooth(n, y, strict=False):
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            if (d >= y) if strict else (d > y):
                return False
            m //= d
        d += 1
    if m > 1:
        return (m < y) if strict else (m <= y)
    return True


def test_spf_segment_small():
    seg = sieve_spf_segment(2, 5)
    assert [seg.spf(n) for n in range(2, 7)] == [2, 3, 2, 5, 2]
    seg = sieve_spf_segment(49, 1)
    assert seg.spf(49) == 7
    seg = sieve_spf_segment(1000003, 1)
    assert seg.spf(1000003) == 1000003  # prime


def test_spf_segment_matches_factorize():
    rng = random.Random(7)
    lo = rng.randrange(10**6, 10**7)
    seg = sieve_spf_segment(lo, 2000)
    for n in range(lo, lo + 2000):
        f = factorize(n)
        expect = f.factors[0][0] if f.factors else n
        assert seg.spf(n) == expect


def test_factorize_examples():
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(1).factors == ()
    assert factorize(97).factors == ((97, 1),)
    assert factorize(97).max_prime == 97
    assert factorize(1).max_prime == 1


def test_factorize_reconstructs_exhaustive():
    for n in range(2, 100000):
        f = factorize(n)
        prod = 1
        last = 1
        for p, e in f.factors:
            assert p > last  # ascending, distinct
            last = p
            prod *= p**e
        assert prod == n
        assert f.max_prime == f.factors[-1][0]


def test_factorize_random_large():
    rng = random.Random(20260814)
    for _ in range(300):
        n = rng.randrange(10**8, 10**12)
        f = factorize(n)
        prod = 1
        for p, e in f.factors:
            prod *= p**e
        assert prod == n


def test_factorize_with_segment():
    seg = sieve_spf_segment(100, 50)
    for n in range(100, 150):
        assert factorize(n, seg).factors == factorize(n).factors


def test_domain_errors():
    for bad in (0, -3):
        with pytest.raises(ValueError):
            von_mangoldt(bad)
        with pytest.raises(ValueError):
            factorize(bad)


def test_is_smooth_examples():
    assert is_smooth(8, 2)
    assert is_smooth(9, 3)
    assert is_smooth(10, 5)
    assert not is_smooth(14, 5)
    assert is_smooth(1, 2)
    assert not is_smooth(49, 7, strict=True)
    assert is_smooth(49, 7)


def test_is_smooth_matches_brute():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randrange(1, 10**6)
        y = rng.choice([2, 3, 5, 10, 31, 100, 1000])
        assert is_smooth(n, y) == brute_is_smooth(n, y)
        assert is_smooth(n, y, strict=True) == brute_is_smooth(n, y, True)


def test_von_mangoldt_values():
    assert von_mangoldt(1) == 0.0
    assert von_mangoldt(2) == math.log(2)
    assert von_mangoldt(9) == math.log(3)
    assert von_mangoldt(12) == 0.0
    assert von_mangoldt(1024) == math.log(2)
    assert von_mangoldt(10**6 + 3) == math.log(10**6 + 3)


def test_von_mangoldt_chebyshev_identity():
    # sum_{n <= N} Lambda(n) = log lcm(1..N), exactly in exact arithmetic.
    N = 10000
    acc = math.fsum(von_mangoldt(n) for n in range(1, N + 1))
    l = 1
    for n in range(2, N + 1):
        l = math.lcm(l, n)
    assert abs(acc - math.log(l)) <= 1e-9 * math.log(l)


def brute_psi(x, y, strict=False):
    return sum(1 for n in range(1, int(math.floor(x)) + 1)
               if brute_is_smooth(n, y, strict))


def test_psi_examples():
    assert psi_count(10, 10) == 10
    assert psi_count(100, 5) == 34
    assert psi_count(10, 2) == 4
    assert psi_count(1, 2) == 1
    assert psi_count(100, 5, strict=True) == brute_psi(100, 5, True)


def test_psi_monotone():
    vals_y = [psi_count(1000, y) for y in (2, 3, 5, 7, 11, 31, 100, 1000)]
    assert vals_y == sorted(vals_y)
    assert vals_y[-1] == 1000
    vals_x = [psi_count(x, 7) for x in (10, 100, 1000, 10000)]
    assert vals_x == sorted(vals_x)


def test_psi_noninteger_arguments():
    assert psi_count(100.5, 5) == psi_count(100, 5)
    assert psi_count(99.99, 5) == psi_count(99, 5)
    # y between consecutive primes: only primes <= y matter
    assert psi_count(100, 6.9) == psi_count(100, 5)


def test_psi_large_instance():
    # frozen from an independent depth-first enumeration over the prime
    # basis {2, 3, ..., 97}
    assert psi_count(3e7, 97) == 490540


def test_psi_ceiling():
    with pytest.raises(ValueError):
        psi_count(2.0**63, 2)


def test_smooth_in_interval_examples():
    assert smooth_in_interval(47, 9, 10) == [48, 49, 50, 54, 56]
    assert smooth_in_interval(2, 1, 2) == []


def test_smooth_in_interval_matches_brute():
    rng = random.Random(11)
    for _ in range(10):
        x = rng.randrange(10**6, 10**7) + 0.5
        z = rng.randrange(200, 1500)
        y = rng.choice([5, 10, 50, 200])
        got = smooth_in_interval(x, z, y)
        expect = [n for n in range(int(x) + 1, int(math.floor(x + z)) + 1)
                  if n > x and brute_is_smooth(n, y)]
        assert got == expect
        got_s = smooth_in_interval(x, z, y, strict=True)
        expect_s = [n for n in expect if brute_is_smooth(n, y, True)]
        assert got_s == expect_s


def test_smooth_in_interval_consistent_with_psi():
    # (2, 1000] catches every smooth number but 1 and 2
    hits = smooth_in_interval(2, 998, 7)
    assert len(hits) == psi_count(1000, 7) - 2
    assert hits[0] == 3


def test_d3_examples():
    assert d3_count(1) == 1
    assert d3_count(12) == 18
    assert d3_count(97) == 3


def test_d3_brute():
    def brute(n):
        c = 0
        for a in range(1, n + 1):
            if n % a:
                continue
            m = n // a
            for b in range(1, m + 1):
                if m % b == 0:
                    c += 1
        return c

    for n in range(1, 200):
        assert d3_count(n) == brute(n)


def test_primes_upto():
    ps = primes_upto(100)
    assert list(ps[:4]) == [2, 3, 5, 7]
    assert len(ps) == 25
    assert len(primes_upto(1)) == 0


def test_acceptance_style_small_grid():
    for x in (100, 1000):
        for y in (2, 3, 7, 31):
            assert psi_count(x, y) == brute_psi(x, y)
