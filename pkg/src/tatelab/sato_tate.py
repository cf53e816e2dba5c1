"""Equidistribution diagnostics for trace-angle sequences.

Compares the empirical angle distribution against the semicircle-type
measure mu = (2/pi) sin^2(theta) dtheta via the KS distance, even trace
moments (Catalan targets), and symmetric-power character sums with their
pole-order estimators.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .curves import TraceRecord


def haar_cdf(theta: float) -> float:
    """CDF of mu = (2/pi) sin^2(theta) dtheta: theta/pi - sin(2 theta)/(2 pi)."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"angle out of [0, pi]: {theta}")
    return theta / math.pi - math.sin(2.0 * theta) / (2.0 * math.pi)


def character(m: int, theta: float) -> float:
    """Value of the degree-(m+1) irreducible SU(2) character at angle theta.

    chi_m(theta) = sin((m+1) theta) / sin(theta), with the limit values
    m+1 at theta = 0 and (-1)^m (m+1) at theta = pi.  Near the endpoints
    the equivalent cosine sum sum_a cos((m-2a) theta) is used for stability.
    """
    if m < 0:
        raise ValueError(f"character degree must be >= 0, got {m}")
    s = math.sin(theta)
    if abs(s) < 1e-6:
        return math.fsum(math.cos((m - 2 * a) * theta) for a in range(m + 1))
    return math.sin((m + 1) * theta) / s


def ks_statistic(records: list[TraceRecord]) -> float:
    """Sup-norm distance between the empirical CDF of theta_p and haar_cdf.

    Both one-sided gaps are evaluated at every sample point; invariant
    under reordering of the input.
    """
    if not records:
        raise ValueError("KS statistic needs at least one record")
    thetas = sorted(r.theta_p for r in records)
    n = len(thetas)
    d = 0.0
    for i, th in enumerate(thetas):
        f = haar_cdf(th)
        d = max(d, (i + 1) / n - f, f - i / n)
    return d


def moment_report(records: list[TraceRecord], k_max: int = 3) -> list[tuple[int, float]]:
    """Empirical even moments M_2k = mean((2 cos theta_p)^{2k}), k = 1..k_max.

    Under mu the targets are the Catalan numbers C_k = binom(2k, k)/(k+1).
    Sums reduce in prime order for bit-reproducibility.
    """
    if k_max > 8:
        raise ValueError(f"moment order capped at 8, got {k_max}")
    n = len(records)
    out = []
    for k in range(1, k_max + 1):
        total = math.fsum((2.0 * math.cos(r.theta_p)) ** (2 * k) for r in records)
        out.append((k, total / n if n else 0.0))
    return out


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def c_chi_estimate(
    records: list[TraceRecord], m: int, X: int
) -> tuple[float, float]:
    """Character sum S_m = sum_p chi_m(theta_p) and c_hat = S_m log(X) / X.

    c_hat estimates the order at s=1 of the degree-(m+1) character
    L-function; under equidistribution it tends to 0 for every m >= 1.
    """
    if m < 1:
        raise ValueError(f"character index must be >= 1, got {m}")
    s_m = math.fsum(character(m, r.theta_p) for r in records)
    return s_m, s_m * math.log(X) / X


@dataclass(frozen=True)
class STReport:
    """Equidistribution report for one curve at cutoff X.

    char_sums rows are (m, S_m, c_hat); moments rows are (k, M_2k).
    """

    X: int
    n_primes: int
    ks_stat: float
    moments: tuple[tuple[int, float], ...]
    char_sums: tuple[tuple[int, float, float], ...]

    def to_dict(self) -> dict:
        return {
            "X": self.X,
            "n_primes": self.n_primes,
            "ks_stat": self.ks_stat,
            "moments": [{"k": k, "M_2k": v} for k, v in self.moments],
            "char_sums": [
                {"m": m, "S_m": s, "c_hat": c} for m, s, c in self.char_sums
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def csv_rows(self) -> list[tuple[str, str, str]]:
        """Fixed schema (metric, index, value), one row per k / per m."""
        rows = [("ks", "", _fmt(self.ks_stat))]
        for k, v in self.moments:
            rows.append(("moment", str(2 * k), _fmt(v)))
        for m, s, c in self.char_sums:
            rows.append(("char_sum", str(m), _fmt(s)))
            rows.append(("c_hat", str(m), _fmt(c)))
        return rows


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def build_report(
    records: list[TraceRecord], X: int, k_max: int = 3, m_max: int = 6
) -> STReport:
    """Assemble the full report: KS distance, moments, character sums."""
    moments = tuple(moment_report(records, k_max))
    chars = tuple(
        (m, *c_chi_estimate(records, m, X)) for m in range(1, m_max + 1)
    )
    return STReport(
        X=X,
        n_primes=len(records),
        ks_stat=ks_statistic(records),
        moments=moments,
        char_sums=chars,
    )
