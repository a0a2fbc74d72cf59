import math

import numpy as np
import pytest

from smoothlab.dickman import build_rho_table, rho, rho_asymptotic_report


def test_closed_form_first_unit(rho_table):
    for u in np.linspace(0.0, 1.0, 200):
        assert rho(float(u), rho_table) == 1.0


def test_closed_form_second_unit(rho_table):
    for u in np.linspace(1.0, 2.0, 1000):
        u = float(u)
        if u <= 1.0:
            continue
        assert abs(rho(u, rho_table) - (1.0 - math.log(u))) <= 1e-10


def test_reference_values(rho_table):
    # rho(3) and rho(10) appear in several published tables; all three
    # were re-verified against a 35-digit Richardson-extrapolated
    # integration of the delay equation, independent of this module
    assert abs(rho(3.0, rho_table) - 0.0486083883) <= 1e-9
    assert abs(rho(10.0, rho_table) / 2.770171838e-11 - 1.0) <= 1e-8
    assert abs(rho(20.0, rho_table) / 2.4617828288e-29 - 1.0) <= 1e-9


def test_dde_residual(rho_table):
    # u rho'(u) + rho(u-1) = 0; derivative by finite differences on the
    # interpolant.  Centered five-point away from the integer joints,
    # one-sided four-point near them (rho'' jumps at u = 2).
    h = 1e-4
    worst = 0.0
    for u in np.arange(1.05, 20.0, 0.0103):
        u = float(u)
        frac = u - math.floor(u)
        if min(frac, 1.0 - frac) > 4.5 * h and abs(u - 1.05) > 4 * h:
            d = (rho(u - 2 * h, rho_table) - 8 * rho(u - h, rho_table)
                 + 8 * rho(u + h, rho_table)
                 - rho(u + 2 * h, rho_table)) / (12 * h)
        else:
            f0 = rho(u, rho_table)
            f1 = rho(u + h, rho_table)
            f2 = rho(u + 2 * h, rho_table)
            f3 = rho(u + 3 * h, rho_table)
            d = (-11 * f0 + 18 * f1 - 9 * f2 + 2 * f3) / (6 * h)
        res = u * d + rho(u - 1.0, rho_table)
        worst = max(worst, abs(res))
    assert worst <= 1e-6


def test_step_halving(rho_table):
    fine = build_rho_table(step=1.0 / 2048, u_max=12.0)
    for u in np.arange(0.0, 10.0, 0.0097):
        u = float(u)
        assert abs(rho(u, rho_table) - rho(u, fine)) <= 1e-9


def test_positive_and_decreasing(rho_table):
    prev = None
    for u in np.arange(1.0, 50.0, 0.125):
        v = rho(float(u), rho_table)
        assert v > 0.0
        if prev is not None:
            assert v < prev
        prev = v


def test_domain_errors(rho_table):
    with pytest.raises(ValueError):
        rho(-0.5, rho_table)
    with pytest.raises(ValueError):
        rho(rho_table.u_max + 1.0, rho_table)


def test_table_validation():
    with pytest.raises(ValueError):
        build_rho_table(step=1.0 / 3)  # units not integer multiples
    with pytest.raises(ValueError):
        build_rho_table(u_max=0.0)


def test_asymptotic_report(rho_table):
    with pytest.raises(ValueError):
        rho_asymptotic_report(1.5)
    for u in np.arange(2.0, 40.0, 0.5):
        u = float(u)
        r = rho_asymptotic_report(u)
        assert r == math.exp(-0.5 * u * math.log(u))
        # crude but valid upper envelope on this range
        assert rho(u, rho_table) <= r
