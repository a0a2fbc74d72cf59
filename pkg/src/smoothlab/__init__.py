"""Smooth numbers in short intervals: counting, Dickman rho, Dirichlet
polynomial mean values, Perron kernels and explicit-formula diagnostics.
"""

from .arith import (Factorization, SpfSegment, d3_count, factorize, is_smooth,
                    primes_upto, psi_count, sieve_spf_segment,
                    smooth_in_interval, von_mangoldt)
from .dickman import RhoTable, build_rho_table, rho, rho_asymptotic_report
from .dirichlet import (DirichletPoly, SmoothParams, SupportSet,
                        build_support, m1_lower_bound_check, m_eval,
                        m_eval_many, mean_square_integral, mv_bound)
from .explicit import (ContourSpec, IReport, arithmetic_side_i, i_two_sided,
                       j2_closed_form, main_term_i, theorem_z, zero_sum_i,
                       zero_sum_sin)
from .kernels import (KernelSpec, Kind, kernel_closed, kernel_numeric,
                      verify_kernels)
from .zeros import (ZeroLoadError, ZeroTable, count_check,
                    load_default_zeros, load_zeros, rvm_count, write_zeros)

__version__ = "0.1.0"

__all__ = [
    "Factorization", "SpfSegment", "d3_count", "factorize", "is_smooth",
    "primes_upto", "psi_count", "sieve_spf_segment", "smooth_in_interval",
    "von_mangoldt",
    "RhoTable", "build_rho_table", "rho", "rho_asymptotic_report",
    "DirichletPoly", "SmoothParams", "SupportSet", "build_support",
    "m1_lower_bound_check", "m_eval", "m_eval_many", "mean_square_integral",
    "mv_bound",
    "ContourSpec", "IReport", "arithmetic_side_i", "i_two_sided",
    "j2_closed_form", "main_term_i", "theorem_z", "zero_sum_i",
    "zero_sum_sin",
    "KernelSpec", "Kind", "kernel_closed", "kernel_numeric",
    "verify_kernels",
    "ZeroLoadError", "ZeroTable", "count_check", "load_default_zeros",
    "load_zeros", "rvm_count", "write_zeros",
    "__version__",
]
