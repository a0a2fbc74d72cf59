import math

import numpy as np
import pytest

from smoothlab.kernels import (Kind, KernelSpec, TRUNCATION_ENVELOPE_A,
                               kernel_closed, kernel_numeric, verify_kernels)


def test_closed_log():
    spec = KernelSpec(Kind.LOG)
    assert kernel_closed(spec, math.e) == 1.0
    assert kernel_closed(spec, 0.5) == 0.0
    assert kernel_closed(spec, 1.0) == 0.0
    assert abs(kernel_closed(spec, 10.0) - math.log(10.0)) < 1e-15


def test_closed_minlog():
    d = 0.1
    spec = KernelSpec(Kind.MINLOG, d)
    assert kernel_closed(spec, 0.5) == 0.0   # below e^(-2 delta)
    assert kernel_closed(spec, 2.0) == 0.0   # above 1
    assert abs(kernel_closed(spec, math.exp(-d)) - d) < 1e-15
    # tent rises linearly from both kinks
    assert abs(kernel_closed(spec, math.exp(-0.05)) - 0.05) < 1e-15
    assert abs(kernel_closed(spec, math.exp(-0.15)) - 0.05) < 1e-15


def test_closed_sqrt_tent():
    d = 0.1
    spec = KernelSpec(Kind.SQRT_TENT, d)
    assert abs(kernel_closed(spec, 1.0) - 2 * d) < 1e-15
    v = kernel_closed(spec, math.exp(0.1))
    assert abs(v - 0.10512710963760234) < 1e-15
    assert kernel_closed(spec, math.exp(0.3)) == 0.0
    assert kernel_closed(spec, math.exp(-0.3)) == 0.0


def test_minlog_reflection_symmetry():
    d = 0.07
    spec = KernelSpec(Kind.MINLOG, d)
    for lg in np.linspace(-2 * d + 1e-6, -1e-6, 40):
        xi = math.exp(float(lg))
        mirror = math.exp(-2 * d) / xi
        assert abs(kernel_closed(spec, xi)
                   - kernel_closed(spec, mirror)) < 1e-14


def test_sqrt_tent_even_after_sqrt_removal():
    d = 0.12
    spec = KernelSpec(Kind.SQRT_TENT, d)
    for lg in np.linspace(1e-6, 2 * d - 1e-6, 40):
        lg = float(lg)
        a = kernel_closed(spec, math.exp(lg)) / math.exp(0.5 * lg)
        b = kernel_closed(spec, math.exp(-lg)) / math.exp(-0.5 * lg)
        assert abs(a - b) < 1e-14


def test_numeric_matches_closed_spot():
    T = 1e4
    spec = KernelSpec(Kind.LOG)
    got = kernel_numeric(spec, math.e, 1.1, T)
    env = TRUNCATION_ENVELOPE_A * (1 + math.e**1.1) / T
    assert abs(got - 1.0) <= env

    spec = KernelSpec(Kind.MINLOG, 0.1)
    got = kernel_numeric(spec, math.exp(-0.1), 1.1, T)
    assert abs(got - 0.1) <= TRUNCATION_ENVELOPE_A * 2 / T

    spec = KernelSpec(Kind.SQRT_TENT, 0.1)
    xi = math.exp(0.1)
    got = kernel_numeric(spec, xi, 1.1, T)
    env = TRUNCATION_ENVELOPE_A * (1 + xi**1.1) / T
    assert abs(got - kernel_closed(spec, xi)) <= env


def test_numeric_c_independence():
    spec = KernelSpec(Kind.MINLOG, 0.1)
    xi = 0.9231163463866358  # e^(-0.08)
    T = 4000.0
    a = kernel_numeric(spec, xi, 1.1, T)
    b = kernel_numeric(spec, xi, 1.7, T)
    env = (TRUNCATION_ENVELOPE_A * (1 + xi**1.1) / T
           + TRUNCATION_ENVELOPE_A * (1 + xi**1.7) / T)
    assert abs(a - b) <= env


def test_numeric_zero_outside_support():
    # far below the support, the transform decays with the window
    spec = KernelSpec(Kind.MINLOG, 0.1)
    got = kernel_numeric(spec, 0.2, 1.1, 1e4)
    assert abs(got) <= TRUNCATION_ENVELOPE_A * 2 / 1e4


def test_precondition_errors():
    with pytest.raises(ValueError):
        KernelSpec(Kind.MINLOG, 0.0)
    with pytest.raises(ValueError):
        KernelSpec(Kind.SQRT_TENT, -0.1)
    spec = KernelSpec(Kind.SQRT_TENT, 0.1)
    with pytest.raises(ValueError):
        kernel_numeric(spec, 1.0, 0.4, 1e3)  # needs c > 1/2
    with pytest.raises(ValueError):
        kernel_numeric(KernelSpec(Kind.LOG), 1.0, -1.0, 1e3)
    with pytest.raises(ValueError):
        kernel_numeric(KernelSpec(Kind.LOG), 2.0, 1.1, 1e3, step=5.0)
    with pytest.raises(ValueError):
        kernel_closed(KernelSpec(Kind.LOG), -1.0)


def test_verify_kernels_sweep():
    rows = verify_kernels(delta=0.1, T=3000.0, c=1.1, n_xi=10)
    assert len(rows) == 30
    for r in rows:
        assert r["passed"], r
        assert abs(r["numeric"] - r["closed"]) == r["abs_err"]
        assert r["abs_err"] <= r["envelope"]


def test_kink_logs():
    assert KernelSpec(Kind.LOG).kink_logs() == [0.0]
    assert KernelSpec(Kind.MINLOG, 0.1).kink_logs() == [-0.2, -0.1, 0.0]
    assert KernelSpec(Kind.SQRT_TENT, 0.1).kink_logs() == [-0.2, 0.0, 0.2]
