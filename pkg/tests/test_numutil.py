import math
import random
from fractions import Fraction

import mpmath
import numpy as np

from smoothlab.numutil import (dd_mul_reduce_2pi, dd_mul_reduce_2pi_vec,
                               kahan_sum, two_product, two_sum)


def test_two_sum_error_free():
    rng = random.Random(1)
    for _ in range(2000):
        a = rng.uniform(-1e15, 1e15)
        b = rng.uniform(-1e-5, 1e-5) * rng.choice([1.0, 1e10, 1e18])
        s, e = two_sum(a, b)
        assert s == a + b
        assert Fraction(a) + Fraction(b) == Fraction(s) + Fraction(e)


def test_two_product_error_free():
    rng = random.Random(2)
    for _ in range(2000):
        a = rng.uniform(-1e8, 1e8)
        b = rng.uniform(-1e8, 1e8)
        p, e = two_product(a, b)
        assert p == a * b
        assert Fraction(a) * Fraction(b) == Fraction(p) + Fraction(e)


def test_kahan_sum_rounding_pressure():
    # many same-sign terms: compensation keeps the error at a few ulp
    # of the total instead of growing with n
    xs = [1.0 / k for k in range(1, 200001)]
    got = kahan_sum(xs)
    expect = math.fsum(xs)
    assert abs(got - expect) <= 1e-12
    assert kahan_sum([]) == 0.0
    assert kahan_sum([2.5]) == 2.5


def test_phase_reduction_matches_mpmath():
    mpmath.mp.dps = 60
    two_pi = 2 * mpmath.pi
    rng = random.Random(3)
    worst = 0.0
    for _ in range(300):
        n = rng.uniform(1.0, 1e8)
        x = rng.uniform(0.05, 30.0)
        got = dd_mul_reduce_2pi(n, x)
        ref = float(mpmath.fmod(mpmath.mpf(n) * mpmath.mpf(x), two_pi))
        # compare on the circle
        err = abs(complex(math.cos(got), math.sin(got))
                  - complex(math.cos(ref), math.sin(ref)))
        worst = max(worst, err)
    assert worst <= 5e-14


def test_phase_reduction_vec_matches_scalar():
    rng = np.random.default_rng(4)
    ns = rng.uniform(1.0, 1e7, size=500)
    x = 13.815510557964274
    vec = dd_mul_reduce_2pi_vec(ns, x)
    for i in range(0, 500, 37):
        assert vec[i] == dd_mul_reduce_2pi(float(ns[i]), x)


def test_phase_reduction_beats_naive():
    mpmath.mp.dps = 60
    two_pi = 2 * mpmath.pi
    n, x = 2.0e8, math.log(1e6)
    ref = float(mpmath.fmod(mpmath.mpf(n) * mpmath.mpf(x), two_pi))
    dd = dd_mul_reduce_2pi(n, x)
    naive = math.fmod(n * x, 2 * math.pi)
    err_dd = abs(math.sin(dd) - math.sin(ref))
    err_naive = abs(math.sin(naive) - math.sin(ref))
    assert err_dd <= 1e-13
    assert err_dd < err_naive
