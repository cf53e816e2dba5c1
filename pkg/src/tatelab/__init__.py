"""Desk-scale laboratory for Frobenius-trace statistics, symmetric-power
Euler products, finite-field eigenvalue multiplicities, and elliptic-surface
rank heuristics."""

from .arith import PrimeCtx, build_qr_table, legendre, primes_up_to
from .curves import (
    CurveQ,
    FrobeniusPair,
    TraceRecord,
    extension_trace,
    local_zeta,
    reduce_mod,
    trace_fp,
    trace_sequence,
    zeta_numerator,
)
from .l_products import (
    EulerLedger,
    PoleAssumptions,
    build_ledger,
    factorization_sweep,
    generic_rank,
    ledger_pole_order,
    serre_factor,
    symmetric_power_order,
    tate_factor,
    truncated_product,
    verify_factorization,
)
from .nagao import (
    NagaoReport,
    SurfaceQT,
    fibral_average,
    make_section_surface,
    residue_estimate,
    tauberian_sum,
)
from .sato_tate import (
    STReport,
    build_report,
    c_chi_estimate,
    character,
    haar_cdf,
    ks_statistic,
    moment_report,
)
from .tate_ff import AngleClass, classify, tate_multiplicity, zeta_pole_order

__version__ = "0.1.0"

__all__ = [
    "AngleClass",
    "CurveQ",
    "EulerLedger",
    "FrobeniusPair",
    "NagaoReport",
    "PoleAssumptions",
    "PrimeCtx",
    "STReport",
    "SurfaceQT",
    "TraceRecord",
    "build_ledger",
    "build_qr_table",
    "build_report",
    "c_chi_estimate",
    "character",
    "classify",
    "extension_trace",
    "factorization_sweep",
    "fibral_average",
    "generic_rank",
    "haar_cdf",
    "ks_statistic",
    "ledger_pole_order",
    "legendre",
    "local_zeta",
    "make_section_surface",
    "moment_report",
    "primes_up_to",
    "reduce_mod",
    "residue_estimate",
    "serre_factor",
    "symmetric_power_order",
    "tate_factor",
    "tate_multiplicity",
    "tauberian_sum",
    "trace_fp",
    "trace_sequence",
    "truncated_product",
    "verify_factorization",
    "zeta_numerator",
    "zeta_pole_order",
]
