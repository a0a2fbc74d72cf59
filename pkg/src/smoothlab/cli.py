"""Command-line surface.

Every core operation is exposed as a subcommand that emits a single
machine-readable report on stdout.  JSON is the default and is byte
deterministic: key order is fixed by construction and every float is
printed with 17 significant digits.  CSV flattens the same report
(scalar reports as key,value lines, tabular ones as a plain table) and
text mode is a loose human summary.

Exit codes: 0 success, 1 a verification flag inside the report came
back false, 2 usage error (bad flags, missing zeros file, impossible
parameter combinations).

The zero table used by explicit-i, zero-sum-sin and zeros check is
resolved in order: --zeros flag, SMOOTHLAB_ZEROS environment variable,
bundled fixture.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .arith import psi_count, smooth_in_interval
from .dickman import build_rho_table, rho
from .dirichlet import (DirichletPoly, SmoothParams, build_support,
                        m1_lower_bound_check, m_eval, mean_square_integral,
                        mv_bound)
from .explicit import (ContourSpec, IREPORT_CSV_FIELDS, i_two_sided,
                       j2_closed_form, theorem_z, zero_sum_sin)
from .kernels import verify_kernels
from .zeros import ZeroLoadError, count_check, default_zeros_path, load_zeros

__all__ = ["RunConfig", "run", "main"]

ZEROS_ENV = "SMOOTHLAB_ZEROS"


@dataclass
class RunConfig:
    """Resolved invocation. seed-free: core paths use no randomness."""

    subcommand: str
    x: Optional[float] = None
    y: Optional[float] = None
    z: Optional[float] = None
    delta: Optional[float] = None
    B: float = 1.0
    epsilon: Optional[float] = None
    zeros_path: Optional[str] = None
    t_zeros: Optional[float] = None
    t_line: Optional[float] = None  # reserved for left-line diagnostics
    output_format: str = "json"
    threads: int = 1
    theorem_mode: bool = False
    strict_smooth: bool = False
    u_values: List[float] = field(default_factory=list)
    sigmas: List[float] = field(default_factory=list)
    t_values: List[float] = field(default_factory=list)
    c: Optional[float] = None
    n_xi: int = 50
    kernel_delta: float = 0.1
    max_list: int = 10000


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output formatting

def _fmt_float(v: float) -> str:
    return f"{v:.17g}"


def _json_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, str):
        # Keys and values here are plain ASCII identifiers/paths.
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(item) for item in v) + "]"
    if isinstance(v, dict):
        inner = ", ".join(f'"{k}": {_json_value(val)}' for k, val in v.items())
        return "{" + inner + "}"
    if v is None:
        return "null"
    raise TypeError(f"cannot serialize {type(v)!r}")


def _emit_json(report: Dict) -> str:
    lines = []
    for k, v in report.items():
        lines.append(f'  "{k}": {_json_value(v)}')
    return "{\n" + ",\n".join(lines) + "\n}"


def _csv_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_scalar(item) for item in v)
    return str(v)


def _emit_csv(report: Dict) -> str:
    rows = report.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        keys = list(rows[0].keys())
        out = [",".join(keys)]
        for r in rows:
            out.append(",".join(_csv_scalar(r[k]) for k in keys))
        return "\n".join(out)
    out = ["key,value"]
    for k, v in report.items():
        if isinstance(v, dict):
            for kk, vv in v.items():
                out.append(f"{k}.{kk},{_csv_scalar(vv)}")
        else:
            out.append(f"{k},{_csv_scalar(v)}")
    return "\n".join(out)


def _emit_text(report: Dict) -> str:
    out = []

    def walk(prefix: str, v) -> None:
        if isinstance(v, dict):
            for k, val in v.items():
                walk(f"{prefix}.{k}" if prefix else k, val)
            return
        if isinstance(v, list) and v and isinstance(v[0], dict):
            for i, row in enumerate(v):
                parts = ", ".join(f"{k}={_csv_scalar(val)}"
                                  for k, val in row.items())
                out.append(f"{prefix}[{i}]: {parts}")
            return
        out.append(f"{prefix} = {_csv_scalar(v)}")

    for k, v in report.items():
        walk(k, v)
    return "\n".join(out)


def _emit(report: Dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(_emit_json(report) + "\n")
    elif fmt == "csv":
        sys.stdout.write(_emit_csv(report) + "\n")
    else:
        sys.stdout.write(_emit_text(report) + "\n")


# ---------------------------------------------------------------------------
# shared resolution helpers

def _resolve_params(cfg: RunConfig, default_sqrt_z: bool = False,
                    rho_table=None) -> SmoothParams:
    if cfg.x is None or cfg.y is None:
        raise UsageError("this subcommand needs --x and --y")
    given = [cfg.z is not None, cfg.delta is not None, cfg.theorem_mode]
    if sum(given) > 1:
        raise UsageError("supply at most one of --z / --delta / --theorem")
    if cfg.theorem_mode:
        table = rho_table if rho_table is not None else build_rho_table()
        rep = theorem_z(cfg.x, cfg.y, cfg.B, table)
        return SmoothParams.from_xyz(cfg.x, cfg.y, float(rep["z"]))
    if cfg.delta is not None:
        return SmoothParams.from_delta(cfg.x, cfg.y, cfg.delta)
    if cfg.z is not None:
        return SmoothParams.from_xyz(cfg.x, cfg.y, cfg.z)
    if default_sqrt_z:
        # Interval-free subcommands still carry params; z = sqrt(x) is
        # the documented default and never affects their output.
        return SmoothParams.from_xyz(cfg.x, cfg.y, math.sqrt(cfg.x))
    raise UsageError("supply exactly one of --z / --delta / --theorem")


def _params_echo(p: SmoothParams, cfg: RunConfig,
                 t: Optional[float] = None) -> Dict:
    echo: Dict = {"x": p.x, "y": p.y, "u": p.u, "delta": p.delta, "z": p.z,
                  "B": cfg.B}
    if t is not None:
        echo["T"] = t
    return echo


def _resolve_zeros(cfg: RunConfig):
    path = cfg.zeros_path or os.environ.get(ZEROS_ENV) or None
    if path is None:
        path = str(default_zeros_path())
    if not os.path.exists(path):
        raise UsageError(f"zeros file not found: {path}")
    try:
        return load_zeros(path), path
    except ZeroLoadError as e:
        raise UsageError(str(e)) from e


# ---------------------------------------------------------------------------
# subcommand bodies; each returns (report dict, exit code)

def _cmd_psi(cfg: RunConfig):
    if cfg.x is None or cfg.y is None:
        raise UsageError("psi needs --x and --y")
    n = psi_count(cfg.x, cfg.y, strict=cfg.strict_smooth)
    u = math.log(cfg.x) / math.log(cfg.y) if cfg.y > 1 else float("inf")
    report = {"subcommand": "psi",
              "params": {"x": cfg.x, "y": cfg.y, "u": u,
                         "strict": cfg.strict_smooth},
              "psi": n}
    return report, 0


def _cmd_rho(cfg: RunConfig):
    if not cfg.u_values:
        raise UsageError("rho needs --u (one or more values)")
    table = build_rho_table()
    vals = [rho(u, table) for u in cfg.u_values]
    report = {"subcommand": "rho",
              "params": {"u": list(cfg.u_values), "step": table.step,
                         "u_max": table.u_max},
              "rho": vals}
    return report, 0


def _cmd_find_smooth(cfg: RunConfig):
    if cfg.x is None or cfg.y is None:
        raise UsageError("find-smooth needs --x and --y")
    table = build_rho_table()
    theorem_rep = None
    if cfg.theorem_mode:
        theorem_rep = theorem_z(cfg.x, cfg.y, cfg.B, table)
        params = SmoothParams.from_xyz(cfg.x, cfg.y, float(theorem_rep["z"]))
    else:
        params = _resolve_params(cfg)
    hits = smooth_in_interval(params.x, params.z, params.y,
                              strict=cfg.strict_smooth)
    rho_u = rho(params.u, table) if params.u <= table.u_max else 0.0
    report = {"subcommand": "find-smooth",
              "params": _params_echo(params, cfg)}
    if cfg.epsilon is not None:
        report["params"]["epsilon"] = cfg.epsilon
    if theorem_rep is not None:
        report["theorem"] = {
            "rho_half": theorem_rep["rho_half"],
            "inv_delta_check": theorem_rep["inv_delta_check"],
            "theorem_range_ok": theorem_rep["theorem_range_ok"],
        }
    report["count"] = len(hits)
    report["heuristic_expected"] = params.z * rho_u
    if len(hits) > cfg.max_list:
        report["members"] = [n for n in hits[: cfg.max_list]]
        report["members_truncated"] = True
    else:
        report["members"] = list(hits)
        report["members_truncated"] = False
    return report, 0


def _cmd_support(cfg: RunConfig):
    params = _resolve_params(cfg, default_sqrt_z=True)
    sup = build_support(params, strict=cfg.strict_smooth)
    poly = DirichletPoly(sup)
    chk = m1_lower_bound_check(params, poly, build_rho_table())
    report = {"subcommand": "support",
              "params": _params_echo(params, cfg),
              "lo_real": sup.lo_real,
              "hi_real": sup.hi_real,
              "size": len(sup),
              "m_at_1": m_eval(poly, 1.0).real,
              "m_at_0": m_eval(poly, 0.0).real,
              "m1_check": chk,
              "members": list(sup.members)}
    return report, 0 if chk["passed"] or len(sup) == 0 else 1


def _cmd_kernels_verify(cfg: RunConfig):
    t = cfg.t_zeros if cfg.t_zeros is not None else 1.0e4
    c = cfg.c if cfg.c is not None else 1.1
    rows = verify_kernels(delta=cfg.kernel_delta, T=t, c=c, n_xi=cfg.n_xi)
    ok = all(r["passed"] for r in rows)
    report = {"subcommand": "kernels-verify",
              "params": {"delta": cfg.kernel_delta, "T": t, "c": c,
                         "n_xi": cfg.n_xi},
              "all_passed": ok,
              "rows": rows}
    return report, 0 if ok else 1


def _cmd_mv_verify(cfg: RunConfig):
    params = _resolve_params(cfg, default_sqrt_z=True)
    sup = build_support(params)
    poly = DirichletPoly(sup)
    sigmas = cfg.sigmas or [0.0, 0.5, 1.0]
    ts = cfg.t_values or [1.0e2, 1.0e3, 1.0e4]
    rows = []
    ok = True
    for sigma in sigmas:
        for t in ts:
            integral = mean_square_integral(poly, sigma, 0.0, t,
                                            threads=cfg.threads)
            bound = mv_bound(poly, sigma, t)
            passed = integral <= bound
            ok = ok and passed
            rows.append({"sigma": sigma, "T": t, "integral": integral,
                         "bound": bound, "passed": passed})
    # Diagonal-dominance window at T = 100 * n_max.
    ratio_rows = []
    if len(sup):
        t_big = 100.0 * sup.members[-1]
        for sigma in sigmas:
            diag = math.fsum(n ** (-2.0 * sigma) for n in sup.members)
            integral = mean_square_integral(poly, sigma, 0.0, t_big,
                                            threads=cfg.threads)
            ratio = integral / (2.0 * t_big * diag)
            passed = 0.9 <= ratio <= 1.1
            ok = ok and passed
            ratio_rows.append({"sigma": sigma, "T": t_big, "ratio": ratio,
                               "passed": passed})
    report = {"subcommand": "mv-verify",
              "params": _params_echo(params, cfg),
              "all_passed": ok,
              "rows": rows,
              "ratio_rows": ratio_rows}
    return report, 0 if ok else 1


def _cmd_explicit_i(cfg: RunConfig):
    params = _resolve_params(cfg)
    if cfg.t_zeros is None:
        raise UsageError("explicit-i needs --t-zeros")
    zeros, zpath = _resolve_zeros(cfg)
    sup = build_support(params)
    poly = DirichletPoly(sup)
    c = cfg.c if cfg.c is not None else 1.0 + 1.0 / math.log(params.x)
    spec = ContourSpec(c=c, t_zeros=cfg.t_zeros)
    rep = i_two_sided(params, sup, poly, zeros, spec, threads=cfg.threads)
    report = {"subcommand": "explicit-i",
              "params": _params_echo(params, cfg, t=cfg.t_zeros),
              "c": spec.c,
              "zeros_path": zpath,
              "n_zeros_used": int(zeros.upto(cfg.t_zeros).size)}
    report.update(rep.to_dict())
    return report, 0


def _cmd_zero_sum_sin(cfg: RunConfig):
    params = _resolve_params(cfg)
    if cfg.t_zeros is None:
        raise UsageError("zero-sum-sin needs --t-zeros")
    zeros, zpath = _resolve_zeros(cfg)
    sup = build_support(params)
    poly = DirichletPoly(sup)
    val = zero_sum_sin(poly, zeros, params.delta, cfg.t_zeros,
                       threads=cfg.threads)
    report = {"subcommand": "zero-sum-sin",
              "params": _params_echo(params, cfg, t=cfg.t_zeros),
              "zeros_path": zpath,
              "n_zeros_used": int(zeros.upto(cfg.t_zeros).size),
              "value": val}
    return report, 0


def _cmd_j2(cfg: RunConfig):
    params = _resolve_params(cfg)
    sup = build_support(params)
    report = {"subcommand": "j2",
              "params": _params_echo(params, cfg),
              "support_size": len(sup),
              "value": j2_closed_form(params, sup)}
    return report, 0


def _cmd_zeros_check(cfg: RunConfig):
    zeros, zpath = _resolve_zeros(cfg)
    ts = cfg.t_values or [100.0, 1000.0]
    rows = []
    ok = True
    for t in ts:
        res = count_check(zeros, t)
        ok = ok and res["passed"]
        rows.append(res)
    report = {"subcommand": "zeros-check",
              "params": {"zeros_path": zpath, "T": list(ts)},
              "n_zeros": len(zeros),
              "max_height": zeros.max_height,
              "all_passed": ok,
              "rows": rows}
    return report, 0 if ok else 1


_DISPATCH = {
    "psi": _cmd_psi,
    "rho": _cmd_rho,
    "find-smooth": _cmd_find_smooth,
    "support": _cmd_support,
    "kernels-verify": _cmd_kernels_verify,
    "mv-verify": _cmd_mv_verify,
    "explicit-i": _cmd_explicit_i,
    "zero-sum-sin": _cmd_zero_sum_sin,
    "j2": _cmd_j2,
    "zeros-check": _cmd_zeros_check,
}


def run(config: RunConfig) -> int:
    """Execute one resolved invocation, print its report, return exit code."""
    body = _DISPATCH.get(config.subcommand)
    if body is None:
        raise UsageError(f"unknown subcommand {config.subcommand!r}")
    report, code = body(config)
    _emit(report, config.output_format)
    return code


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"),
                   default="json", dest="output_format")
    p.add_argument("--threads", type=int, default=1)


def _add_xy(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)


def _add_interval(p: argparse.ArgumentParser, with_theorem: bool = False,
                  required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--z", type=float)
    g.add_argument("--delta", type=float)
    if with_theorem:
        g.add_argument("--theorem", action="store_true", dest="theorem_mode")


def _add_zeros(p: argparse.ArgumentParser) -> None:
    p.add_argument("--zeros", dest="zeros_path",
                   help=f"zero table path (fallback: ${ZEROS_ENV}, then the "
                        "bundled fixture)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="smoothlab",
        description="smooth numbers in short intervals: counting, Dickman "
                    "rho, Dirichlet-polynomial mean values, Perron kernels "
                    "and explicit-formula diagnostics")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("psi", help="count of y-smooth integers up to x")
    _add_xy(p)
    p.add_argument("--strict-smooth", action="store_true",
                   dest="strict_smooth",
                   help="require prime factors < y instead of <= y")
    _add_common(p)

    p = sub.add_parser("rho", help="Dickman rho values")
    p.add_argument("--u", type=float, nargs="+", required=True,
                   dest="u_values")
    _add_common(p)

    p = sub.add_parser("find-smooth",
                       help="list y-smooth integers in (x, x+z]")
    _add_xy(p)
    _add_interval(p, with_theorem=True)
    p.add_argument("--B", type=float, default=1.0,
                   help="theorem-mode interval constant (default 1)")
    p.add_argument("--epsilon", type=float, default=None,
                   help="report-only slack parameter")
    p.add_argument("--strict-smooth", action="store_true",
                   dest="strict_smooth")
    p.add_argument("--max-list", type=int, default=10000, dest="max_list",
                   help="truncate the member list beyond this count")
    _add_common(p)

    p = sub.add_parser("support",
                       help="dump the Dirichlet support and M(1)/M(0)")
    _add_xy(p)
    _add_interval(p, required=False)
    p.add_argument("--strict-smooth", action="store_true",
                   dest="strict_smooth")
    _add_common(p)

    p = sub.add_parser("kernels", help="Perron kernel identities")
    ksub = p.add_subparsers(dest="kernels_verb", required=True)
    kv = ksub.add_parser("verify", help="numeric vs closed form sweep")
    kv.add_argument("--delta", type=float, default=0.1, dest="kernel_delta")
    kv.add_argument("--T", type=float, default=1.0e4, dest="t_zeros")
    kv.add_argument("--c", type=float, default=None)
    kv.add_argument("--n-xi", type=int, default=50, dest="n_xi")
    _add_common(kv)

    p = sub.add_parser("mv", help="mean-value bound checks")
    msub = p.add_subparsers(dest="mv_verb", required=True)
    mv = msub.add_parser("verify", help="mean square vs rigorous bound")
    _add_xy(mv)
    _add_interval(mv, required=False)
    mv.add_argument("--sigma", type=float, nargs="+", default=None,
                    dest="sigmas")
    mv.add_argument("--T", type=float, nargs="+", default=None,
                    dest="t_values")
    _add_common(mv)

    p = sub.add_parser("explicit-i",
                       help="two-sided evaluation of the central sum I")
    _add_xy(p)
    _add_interval(p)
    p.add_argument("--t-zeros", type=float, required=True, dest="t_zeros")
    p.add_argument("--c", type=float, default=None,
                   help="right-line abscissa (default 1 + 1/log x)")
    _add_zeros(p)
    _add_common(p)

    p = sub.add_parser("zero-sum-sin",
                       help="nonnegative sine-kernel zero sum")
    _add_xy(p)
    _add_interval(p)
    p.add_argument("--t-zeros", type=float, required=True, dest="t_zeros")
    _add_zeros(p)
    _add_common(p)

    p = sub.add_parser("j2", help="closed form of the J2 cross term")
    _add_xy(p)
    _add_interval(p)
    _add_common(p)

    p = sub.add_parser("zeros", help="zero-table operations")
    zsub = p.add_subparsers(dest="zeros_verb", required=True)
    zc = zsub.add_parser("check", help="Riemann-von Mangoldt count check")
    zc.add_argument("--T", type=float, nargs="+", default=None,
                    dest="t_values")
    _add_zeros(zc)
    _add_common(zc)

    return ap


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    sub = ns.subcommand
    if sub == "kernels":
        sub = "kernels-verify"
    elif sub == "mv":
        sub = "mv-verify"
    elif sub == "zeros":
        sub = "zeros-check"
    cfg = RunConfig(subcommand=sub)
    for name in ("x", "y", "z", "delta", "B", "epsilon", "zeros_path",
                 "t_zeros", "output_format", "threads", "theorem_mode",
                 "strict_smooth", "u_values", "sigmas", "t_values", "c",
                 "n_xi", "kernel_delta", "max_list"):
        if hasattr(ns, name) and getattr(ns, name) is not None:
            setattr(cfg, name, getattr(ns, name))
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        # argparse already printed the message; normalize the code.
        return 2 if e.code not in (0,) else 0
    cfg = _config_from_args(ns)
    try:
        return run(cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
