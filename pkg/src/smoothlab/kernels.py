"""The three Perron/Mellin kernels and their contour-integral checks.

Each kernel is the inverse Mellin transform of a simple factor on a
vertical line:

* LOG:        (1/2*pi*i) * int xi^s / s^2 ds            = log(xi) for xi >= 1
* MINLOG:     same with ((e^(delta*s) - 1)/s)^2         = min(log(e^(2 delta) xi), log(1/xi))
                                                          on [e^(-2 delta), 1]
* SQRT_TENT:  same with (2*sinh(delta*(s-1/2)))^2/(s-1/2)^2
                                                        = sqrt(xi)*(2*delta - |log xi|)
                                                          on [e^(-2 delta), e^(2 delta)]

kernel_closed evaluates the right-hand sides; kernel_numeric does the
truncated line integral with composite Simpson so the identities can be
verified numerically.  Truncation error behaves like (1 + xi^c)/T and
converges slowly near the kinks of each kernel, which is why the
verification grid stays away from them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

__all__ = ["Kind", "KernelSpec", "kernel_closed", "kernel_numeric",
           "verify_kernels", "TRUNCATION_ENVELOPE_A"]

#: Constant A in the empirical truncation envelope A * (1 + xi^c) / T.
TRUNCATION_ENVELOPE_A = 20.0


class Kind(enum.Enum):
    LOG = "log"
    MINLOG = "minlog"
    SQRT_TENT = "sqrt_tent"


@dataclass(frozen=True)
class KernelSpec:
    kind: Kind
    delta: float = 0.0

    def __post_init__(self) -> None:
        if self.kind in (Kind.MINLOG, Kind.SQRT_TENT) and not self.delta > 0:
            raise ValueError(f"{self.kind.value} kernel needs delta > 0")

    def kink_logs(self) -> List[float]:
        """log(xi) positions where the kernel's derivative jumps."""
        d = self.delta
        if self.kind is Kind.LOG:
            return [0.0]
        if self.kind is Kind.MINLOG:
            return [-2.0 * d, -d, 0.0]
        return [-2.0 * d, 0.0, 2.0 * d]


def kernel_closed(spec: KernelSpec, xi: float) -> float:
    """Closed-form kernel value at xi > 0 (continuous extension at edges)."""
    if xi <= 0:
        raise ValueError("kernel argument must be positive")
    lx = math.log(xi)
    if spec.kind is Kind.LOG:
        return lx if xi >= 1.0 else 0.0
    d = spec.delta
    if spec.kind is Kind.MINLOG:
        if -2.0 * d <= lx <= 0.0:
            return min(2.0 * d + lx, -lx)
        return 0.0
    # SQRT_TENT
    if -2.0 * d <= lx <= 2.0 * d:
        return math.sqrt(xi) * (2.0 * d - abs(lx))
    return 0.0


def _integrand(spec: KernelSpec, xi: float, s: np.ndarray) -> np.ndarray:
    out = np.exp(s * math.log(xi))
    if spec.kind is Kind.LOG:
        return out / (s * s)
    if spec.kind is Kind.MINLOG:
        g = np.expm1(spec.delta * s) / s
        return out * g * g
    w = s - 0.5
    g = 2.0 * np.sinh(spec.delta * w) / w
    return out * g * g


def kernel_numeric(spec: KernelSpec, xi: float, c: float, T: float,
                   step: Optional[float] = None) -> float:
    """Truncated contour integral (1/2*pi*i) * int over Re(s)=c, |Im s|<=T.

    Args:
        spec: Kernel selector.
        xi: Argument, > 0.
        c: Abscissa of the line; c > 0 for LOG/MINLOG, c > 1/2 for
            SQRT_TENT (the integrand's only singularity must stay left
            of the line).
        T: Truncation height, > 0.
        step: Simpson node spacing; must satisfy
            step <= 0.1 / max(1, |log xi| + 2*delta).  Defaults to the
            maximum allowed.

    Returns:
        Real part of the truncated integral.  The imaginary part
        vanishes by conjugate symmetry up to quadrature roundoff; it is
        checked against 1e-9 * (1 + xi^c) internally.
    """
    if xi <= 0:
        raise ValueError("kernel argument must be positive")
    cmin = 0.5 if spec.kind is Kind.SQRT_TENT else 0.0
    if not c > cmin:
        raise ValueError(f"{spec.kind.value} kernel needs c > {cmin}")
    if not T > 0:
        raise ValueError("need T > 0")
    allowed = 0.1 / max(1.0, abs(math.log(xi)) + 2.0 * spec.delta)
    if step is None:
        step = allowed
    if step <= 0 or step > allowed * (1 + 1e-12):
        raise ValueError(f"step {step} too coarse; need <= {allowed}")

    panels = max(2, math.ceil(2.0 * T / step))
    if panels % 2:
        panels += 1
    h = 2.0 * T / panels
    total = 0.0 + 0.0j
    block = 1 << 16
    # Simpson weights assembled blockwise over the fixed global grid.
    for i0 in range(0, panels + 1, block):
        i1 = min(i0 + block, panels + 1)
        idx = np.arange(i0, i1)
        t = -T + h * idx
        vals = _integrand(spec, xi, c + 1j * t)
        w = np.where(idx % 2 == 1, 4.0, 2.0)
        w[idx == 0] = 1.0
        w[idx == panels] = 1.0
        total += complex(np.dot(w, vals))
    total *= h / 3.0 / (2.0 * math.pi)  # ds = i dt cancels the i of 2*pi*i
    if abs(total.imag) > 1e-9 * (1.0 + xi**c):
        raise ArithmeticError(
            f"imaginary residue {total.imag} exceeds quadrature tolerance")
    return float(total.real)


def verify_kernels(delta: float = 0.1, T: float = 1.0e4, c: float = 1.1,
                   n_xi: int = 50, kink_margin: float = 1.5e-3,
                   envelope_a: float = TRUNCATION_ENVELOPE_A
                   ) -> List[Dict[str, object]]:
    """Check kernel_numeric against kernel_closed on a log-uniform grid.

    For each kernel, samples n_xi points of log(xi) in [-3*delta,
    3*delta] (deterministically; no RNG), discarding candidates within
    kink_margin of a kink, and records |numeric - closed| against the
    envelope A*(1 + xi^c)/T.

    Returns:
        One row per (kernel, xi) with fields kind, xi, closed, numeric,
        abs_err, envelope, passed.
    """
    rows: List[Dict[str, object]] = []
    for kind in (Kind.LOG, Kind.MINLOG, Kind.SQRT_TENT):
        spec = KernelSpec(kind=kind, delta=delta)
        kinks = spec.kink_logs()
        grid: List[float] = []
        m = n_xi
        while len(grid) < n_xi:
            m += n_xi // 2
            cand = np.linspace(-3.0 * delta, 3.0 * delta, m)
            grid = [float(v) for v in cand
                    if min(abs(v - k) for k in kinks) > kink_margin]
        for lx in grid[:n_xi]:
            xi = math.exp(lx)
            closed = kernel_closed(spec, xi)
            numeric = kernel_numeric(spec, xi, c, T)
            env = envelope_a * (1.0 + xi**c) / T
            err = abs(numeric - closed)
            rows.append({
                "kind": kind.value,
                "xi": xi,
                "closed": closed,
                "numeric": numeric,
                "abs_err": err,
                "envelope": env,
                "passed": err <= env,
            })
    return rows
