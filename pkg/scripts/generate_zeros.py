#!/usr/bin/env python3
"""Generate and verify the bundled table of zeta-zero ordinates.

This is a maintenance script, not part of the package runtime: it needs
scipy and mpmath on top of numpy.  It recomputes the fixture shipped at
src/smoothlab/data/zeros_100k.txt.gz from scratch and refuses to write
anything unless every verification stage passes.

Method
------
1. Scan Z(t) (Hardy's function) on a fixed lattice of step 0.005 from
   t = 14 up past the target height.  Below t = 200 the scan uses
   Euler-Maclaurin evaluation of zeta(1/2 + it) (validated against
   mpmath.siegelz to ~4e-11 over the whole range); above it uses the
   Riemann-Siegel formula with correction terms C0..C2 built from a
   Chebyshev fit of the theta-function remainder (validated to ~3e-5,
   far below typical lattice |Z| values).  Lattice points adjacent to
   main-sum cutoff changes are re-evaluated with Euler-Maclaurin.
2. Bracket sign changes, bisect each bracket with the Riemann-Siegel
   evaluator to width ~4e-5, then polish every root with three secant
   steps driven by Euler-Maclaurin values.  Final ordinate accuracy is
   ~1e-9 (limited by the 1e-10-level Z accuracy over typical slopes).
3. Verify completeness and accuracy:
   a. Turing-style window test: over every window [a, a+30] the
      integral of N_computed(t) - theta(t)/pi - 1 must stay within
      +-5 (the true integral of S(t) over such windows is bounded by
      ~3.5 in this height range; a single missing or spurious zero
      shifts all later windows by -+30).
   b. Riemann-von Mangoldt count checks at several heights.
   c. mpmath cross-checks: zetazero(n) agreement for sampled indices
      and siegelz sign flips across gamma +- 5e-7 for sampled zeros.
   d. Gap sanity (all gaps in (0, 10)) and first-zero pin.

Usage: python scripts/generate_zeros.py [--count 100000] [--out PATH]
       [--fast-checks]  (skips the slow high-index zetazero calls)
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
from scipy.special import bernoulli, loggamma

TWO_PI = 2.0 * math.pi
LOG_PI = math.log(math.pi)
LATTICE_T0 = 14.0
LATTICE_H = 0.005
RS_MIN_T = 200.0
EM_MULT = 2.5  # Euler-Maclaurin cutoff N ~ EM_MULT * t / 2pi
EM_K = 15  # Bernoulli correction terms
_BERN = bernoulli(2 * EM_K)


def theta(t: np.ndarray) -> np.ndarray:
    """Riemann-Siegel theta via the log-gamma function (exact branch)."""
    t = np.asarray(t, dtype=float)
    return loggamma(0.25 + 0.5j * t).imag - 0.5 * t * LOG_PI


def _zeta_em_chunk(t: np.ndarray) -> np.ndarray:
    """Euler-Maclaurin zeta(1/2+it) for a chunk of comparable heights."""
    s = 0.5 + 1j * t
    N = max(32, int(EM_MULT * t.max() / TWO_PI) + 1)
    logn = np.log(np.arange(1, N, dtype=float))
    out = np.empty(t.shape, dtype=complex)
    for i in range(t.size):
        out[i] = np.exp(-s[i] * logn).sum()
    Nf = float(N)
    lognf = math.log(Nf)
    NmS = np.exp(-s * lognf)
    out += Nf * NmS / (s - 1.0) + 0.5 * NmS
    prod = np.ones_like(s)
    for k in range(1, EM_K + 1):
        if k == 1:
            prod = s.copy()
        else:
            prod = prod * (s + (2 * k - 3)) * (s + (2 * k - 2))
        out += (_BERN[2 * k] / math.factorial(2 * k)) * prod * NmS \
            * Nf ** (1 - 2 * k)
    return out


def z_em(t: np.ndarray, chunk: int = 256) -> np.ndarray:
    """Z(t) by Euler-Maclaurin, chunked so N tracks the local height.

    Input need not be sorted, but chunking is fixed by position, so
    callers should pass roughly ascending arrays for best speed.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape, dtype=float)
    for i0 in range(0, t.size, chunk):
        sl = slice(i0, min(i0 + chunk, t.size))
        tb = t[sl]
        out[sl] = (np.exp(1j * theta(tb)) * _zeta_em_chunk(tb)).real
    return out


# -- Riemann-Siegel with C0..C2 ------------------------------------------

def _build_remainder_polys():
    """Chebyshev fit of Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p) on [0,1].

    The removable singularities at p = 1/4, 3/4 are avoided by masking
    sample nodes; degree 60 reproduces Psi to ~7e-14.  Returns the fit
    and its derivative chain up to order 6.
    """
    nodes = np.cos(np.pi * (np.arange(2000) + 0.5) / 2000.0)
    p = 0.5 * (nodes + 1.0)
    mask = (np.abs(p - 0.25) > 1e-4) & (np.abs(p - 0.75) > 1e-4)
    p = p[mask]
    vals = np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)
    cheb = np.polynomial.chebyshev.Chebyshev.fit(p, vals, 60, domain=[0, 1])
    derivs = [cheb]
    for _ in range(6):
        derivs.append(derivs[-1].deriv())
    return derivs


_D = _build_remainder_polys()
_PI2 = math.pi * math.pi


def _rs_correction(p: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """C0(p) + C1(p) tau^-1/2 + C2(p) tau^-1 (tau = t / 2pi)."""
    c0 = _D[0](p)
    c1 = -_D[3](p) / (96.0 * _PI2)
    c2 = _D[6](p) / (18432.0 * _PI2 * _PI2) + _D[2](p) / (64.0 * _PI2)
    rt = 1.0 / np.sqrt(tau)
    return c0 + rt * (c1 + rt * c2)


def z_rs(t: np.ndarray) -> np.ndarray:
    """Z(t) by Riemann-Siegel (C0..C2) for arbitrary t >= 100.

    Points are grouped by the main-sum cutoff nu = floor(sqrt(t/2pi)) so
    each group is evaluated with one dense matrix.
    """
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / TWO_PI)
    nu = np.floor(a).astype(np.int64)
    out = np.empty(t.shape, dtype=float)
    th = theta(t)
    for k in np.unique(nu):
        m = nu == k
        tk = t[m]
        logn = np.log(np.arange(1, k + 1, dtype=float))
        rs = 1.0 / np.sqrt(np.arange(1, k + 1, dtype=float))
        main = np.zeros(tk.shape)
        blk = max(1, (1 << 21) // int(k))
        for i0 in range(0, tk.size, blk):
            sl = slice(i0, min(i0 + blk, tk.size))
            phases = th[m][sl][:, None] - tk[sl][:, None] * logn[None, :]
            main[sl] = 2.0 * (np.cos(phases) @ rs)
        tau = tk / TWO_PI
        p = a[m] - k
        out[m] = main + (-1.0) ** (k - 1) * tau ** -0.25 \
            * _rs_correction(p, tau)
    return out


# -- Stage 1: lattice scan -------------------------------------------------

def scan_lattice(t_end: float):
    """Z on the global lattice; returns (index array, Z array)."""
    j_end = int(math.floor((t_end - LATTICE_T0) / LATTICE_H))
    j_rs = int(math.ceil((RS_MIN_T - LATTICE_T0) / LATTICE_H))
    z = np.empty(j_end + 1, dtype=float)

    # Euler-Maclaurin below RS_MIN_T.
    j = np.arange(0, j_rs)
    z[:j_rs] = z_em(LATTICE_T0 + j * LATTICE_H, chunk=2048)

    # Riemann-Siegel stretches of constant nu above.
    nu_lo = int(math.floor(math.sqrt(RS_MIN_T / TWO_PI)))
    nu_hi = int(math.floor(math.sqrt(t_end / TWO_PI)))
    boundary_idx = []
    for k in range(nu_lo, nu_hi + 1):
        lo_t = max(RS_MIN_T, TWO_PI * k * k)
        hi_t = min(t_end, TWO_PI * (k + 1) * (k + 1))
        ja = max(j_rs, int(math.ceil((lo_t - LATTICE_T0) / LATTICE_H)))
        jb = min(j_end, int(math.floor((hi_t - LATTICE_T0) / LATTICE_H)))
        if jb < ja:
            continue
        idx = np.arange(ja, jb + 1)
        tb = LATTICE_T0 + idx * LATTICE_H
        th = theta(tb)
        logn = np.log(np.arange(1, k + 1, dtype=float))
        rs = 1.0 / np.sqrt(np.arange(1, k + 1, dtype=float))
        main = np.zeros(tb.shape)
        blk = max(1, (1 << 21) // max(1, k))
        for i0 in range(0, tb.size, blk):
            sl = slice(i0, min(i0 + blk, tb.size))
            phases = th[sl][:, None] - tb[sl][:, None] * logn[None, :]
            main[sl] = 2.0 * (np.cos(phases) @ rs)
        tau = tb / TWO_PI
        p = np.sqrt(tau) - k
        z[ja : jb + 1] = main + (-1.0) ** (k - 1) * tau ** -0.25 \
            * _rs_correction(p, tau)
        boundary_idx.extend((ja - 1, ja, ja + 1))

    # Cutoff-transition lattice points get exact values: the stretch
    # assignment is float-rounded there and a wrong nu costs O(0.1).
    bidx = np.array(sorted({i for i in boundary_idx if j_rs <= i <= j_end}),
                    dtype=np.int64)
    if bidx.size:
        z[bidx] = z_em(LATTICE_T0 + bidx * LATTICE_H)
    return z


# -- Stage 2: root refinement ---------------------------------------------

def refine_roots(z: np.ndarray) -> np.ndarray:
    """Brackets from lattice sign changes, RS bisection, then EM secant."""
    sgn = np.sign(z)
    flip = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
    lo = LATTICE_T0 + flip * LATTICE_H
    hi = lo + LATTICE_H
    zlo = z[flip].copy()
    n = lo.size
    print(f"  {n} sign-change brackets")

    # Lockstep bisection with the cheap evaluator: 7 halvings bring the
    # bracket to ~4e-5, well below the minimum zero gap at these heights.
    use_rs = (lo + hi) / 2.0 >= RS_MIN_T
    for _ in range(7):
        mid = 0.5 * (lo + hi)
        zm = np.empty(n)
        if use_rs.any():
            zm[use_rs] = z_rs(mid[use_rs])
        if (~use_rs).any():
            zm[~use_rs] = z_em(mid[~use_rs], chunk=2048)
        left = zlo * zm > 0
        lo = np.where(left, mid, lo)
        zlo = np.where(left, zm, zlo)
        hi = np.where(left, hi, mid)

    mid = 0.5 * (lo + hi)
    # Euler-Maclaurin secant polish: bracket +-2e-4 around the estimate
    # safely contains the root (RS root bias is <= ~7e-5), then three
    # secant steps; each one multiplies the error by kappa * prior_error
    # so the final iterate is accurate to ~1e-9.
    a = mid - 2e-4
    b = mid + 2e-4
    ab = np.empty(2 * n)
    ab[0::2] = a
    ab[1::2] = b
    zab = z_em(ab)
    za, zb = zab[0::2], zab[1::2]
    bad = za * zb > 0
    if bad.any():
        # No sign change: widen to the bisected bracket (always valid).
        a[bad], b[bad] = lo[bad], hi[bad]
        za[bad] = zlo[bad]
        zb[bad] = z_em(b[bad])
        print(f"  widened {int(bad.sum())} polish brackets")

    t_prev, z_prev = a, za
    t_cur = a - za * (b - a) / (zb - za)
    with np.errstate(invalid="ignore", divide="ignore"):
        for step in range(3):
            z_cur = z_em(t_cur)
            denom = z_cur - z_prev
            t_next = np.where(denom != 0.0,
                              t_cur - z_cur * (t_cur - t_prev) / denom,
                              t_cur)
            if step == 2:
                break
            t_prev, z_prev = t_cur, z_cur
            t_cur = t_next
    roots = np.sort(t_next)
    return roots


# -- Stage 3: verification --------------------------------------------------

def turing_windows(roots: np.ndarray, t_lo: float, t_hi: float,
                   width: float = 30.0):
    """Integrals of N_computed(t) - theta(t)/pi - 1 over fixed windows.

    The true integrand S(t) integrates to at most ~3.5 in absolute
    value over any 30-unit window below 1e5; a missing zero drags every
    later window down by the full window width.
    """
    edges = np.arange(t_lo, t_hi + width, width)
    edges = edges[edges <= t_hi + 1e-9]
    vals = []
    for aa, bb in zip(edges[:-1], edges[1:]):
        # integral of N over [aa, bb]
        n_a = int(np.searchsorted(roots, aa, side="right"))
        inside = roots[(roots > aa) & (roots <= bb)]
        int_n = n_a * (bb - aa) + float(np.sum(bb - inside))
        # integral of theta/pi + 1 by Simpson at step ~0.25
        m = max(2, int(math.ceil((bb - aa) / 0.25)))
        m += m % 2
        tt = np.linspace(aa, bb, m + 1)
        th = theta(tt) / math.pi + 1.0
        w = np.full(m + 1, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        int_t = (bb - aa) / (3.0 * m) * float(np.dot(w, th))
        vals.append(int_n - int_t)
    return edges, np.array(vals)


def rvm(T: float) -> float:
    return T / TWO_PI * math.log(T / (TWO_PI * math.e)) + 0.875


def verify(roots: np.ndarray, count: int, fast: bool) -> dict:
    report: dict = {}
    ok = True

    g1 = 14.134725141734693
    d1 = abs(roots[0] - g1)
    report["first_zero_err"] = d1
    ok &= d1 < 5e-9
    print(f"  first zero: {roots[0]:.12f} (err {d1:.2e})")

    gaps = np.diff(roots)
    report["min_gap"] = float(gaps.min())
    report["max_gap"] = float(gaps.max())
    ok &= gaps.min() > 0 and gaps.max() < 10
    print(f"  gaps in ({gaps.min():.4f}, {gaps.max():.4f})")

    heights = [100.0, 1000.0, 10000.0, float(np.floor(roots[-1]))]
    for T in [h for h in heights if h <= roots[-1]]:
        n_t = int(np.searchsorted(roots, T, side="right"))
        d = abs(n_t - rvm(T))
        tol = 2.0 + 0.2 * math.log(T)
        report[f"rvm_{int(T)}"] = d
        ok &= d <= tol
        print(f"  RvM at T={T:8.0f}: count {n_t}, |diff| {d:.3f} (tol {tol:.2f})")

    edges, w = turing_windows(roots, 14.2, float(roots[-1]) - 31.0)
    worst = float(np.abs(w).max())
    report["turing_worst"] = worst
    report["turing_windows"] = len(w)
    ok &= worst < 5.0
    print(f"  Turing windows: {len(w)}, worst |integral| {worst:.3f} (tol 5)")

    import mpmath as mp
    mp.mp.dps = 30
    idx = [1, 2, 3, 10, 100, 1000] + ([] if fast else [10000, 100000])
    idx = [i for i in idx if i <= len(roots)]
    worst_mp = 0.0
    for k in idx:
        t0 = time.time()
        ref = float(mp.zetazero(k).imag)
        d = abs(roots[k - 1] - ref)
        worst_mp = max(worst_mp, d)
        print(f"  zetazero({k}) = {ref:.10f} vs {roots[k-1]:.10f} "
              f"(err {d:.2e}, {time.time()-t0:.1f}s)")
    report["mpmath_worst"] = worst_mp
    ok &= worst_mp < 5e-9

    # Sign flips across gamma +- 5e-7 prove each sampled ordinate is
    # within 5e-7 of a true zero (Z errs ~4e-11, slopes dwarf that).
    rng = np.random.default_rng(20260814)
    sample = rng.choice(count, size=min(250, count), replace=False)
    flips = 0
    for k in sorted(sample):
        g = roots[k]
        za, zb = z_em(np.array([g - 5e-7, g + 5e-7]))
        flips += bool(za * zb < 0)
    report["sign_flip_pass"] = int(flips)
    report["sign_flip_total"] = len(sample)
    ok &= flips == len(sample)
    print(f"  sign flips: {flips}/{len(sample)}")

    report["ok"] = bool(ok)
    return report


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100000)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent
                    / "src/smoothlab/data/zeros_100k.txt.gz")
    ap.add_argument("--fast-checks", action="store_true",
                    help="skip the slow high-index zetazero cross-checks")
    args = ap.parse_args(argv)

    # Height that safely contains `count` zeros: invert RvM and pad.
    T = 100.0
    while rvm(T) < args.count + 120:
        T *= 1.01
    print(f"scanning to t = {T:.0f} (lattice step {LATTICE_H})")

    t0 = time.time()
    z = scan_lattice(T)
    print(f"scan done in {time.time()-t0:.1f}s ({z.size} lattice points)")

    t0 = time.time()
    roots = refine_roots(z)
    print(f"refinement done in {time.time()-t0:.1f}s ({roots.size} roots)")

    if roots.size < args.count:
        print(f"FATAL: only {roots.size} roots, need {args.count}")
        return 1

    t0 = time.time()
    report = verify(roots, args.count, args.fast_checks)
    print(f"verification done in {time.time()-t0:.1f}s")
    if not report["ok"]:
        print("FATAL: verification failed; nothing written")
        return 1

    kept = roots[: args.count]
    args.out.parent.mkdir(parents=True, exist_ok=True)
    import gzip
    with gzip.open(args.out, "wt") as fh:
        fh.write(f"# first {args.count} ordinates of zeta zeros on the "
                 "critical line\n")
        fh.write("# generated by scripts/generate_zeros.py; "
                 "see that script for method and verification\n")
        fh.write(f"# max height {kept[-1]:.6f}; accuracy ~1e-9\n")
        for g in kept:
            fh.write(f"{g:.10f}\n")
    print(f"wrote {args.out} ({args.out.stat().st_size} bytes)")
    report_path = args.out.parent / (args.out.name.split(".")[0]
                                     + ".report.json")
    with open(report_path, "w") as fh:
        json.dump(report, fh, indent=1)
    print(f"wrote {report_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
