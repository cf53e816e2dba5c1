"""Symmetric-power Euler factors, products, and the pole-order ledger.

Two normalizations coexist: index-n factors L_n built from e^{+-in theta}
at argument s, and degree-m symmetric-power factors L^1_m built from the
full weight string e^{i(m-2a) theta} at argument s (their rho-normalized
form is L^1_m(s + m/2)).  The exact regrouping between them, the binomial
exponent ledger for the powers E^m, and the resulting pole-order
arithmetic live here.  Pole orders are manipulated purely symbolically;
no analytic continuation is attempted.
"""

from __future__ import annotations

import cmath
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .arith import primes_up_to
from .curves import TraceRecord


class SingularFactorError(ValueError):
    """An Euler factor was evaluated exactly at a zero of its denominator."""


def tate_factor(n: int, theta: float, q: int, s: float) -> float:
    """Index-n local factor at a prime of size q with angle theta.

    n = 0: (1 - q^-s)^-1; n > 0: the conjugate-pair product
    ((1 - e^{in theta} q^-s)(1 - e^{-in theta} q^-s))^-1, which is real.
    """
    if n < 0:
        raise ValueError(f"factor index must be >= 0, got {n}")
    if q < 2:
        raise ValueError(f"prime size must be >= 2, got {q}")
    x = float(q) ** (-s)
    if n == 0:
        den = 1.0 - x
    else:
        den = 1.0 - 2.0 * math.cos(n * theta) * x + x * x
    if den == 0.0:
        raise SingularFactorError(f"singular factor: n={n}, q={q}, s={s}")
    return 1.0 / den


def serre_factor(m: int, theta: float, q: int, s: float) -> float:
    """Degree-m symmetric-power local factor, evaluated as a complex product.

    prod_{a=0}^{m} (1 - e^{i(m-2a) theta} q^{m/2 - s})^-1; analytically real,
    and deliberately computed on a different route than tate_factor so the
    regrouping identities are nontrivial floating checks.
    """
    if m < 0:
        raise ValueError(f"symmetric-power degree must be >= 0, got {m}")
    x = float(q) ** (m / 2.0 - s)
    val = complex(1.0, 0.0)
    for a in range(m + 1):
        den = 1.0 - cmath.exp(1j * (m - 2 * a) * theta) * x
        if den == 0:
            raise SingularFactorError(f"singular factor: m={m}, q={q}, s={s}")
        val /= den
    return val.real


def verify_factorization(
    m: int, theta: float, q: int, s: float
) -> tuple[float, float]:
    """Deviations of the two regrouping identities at one parameter point.

    Returns (factorization deviation, quotient deviation):
      * L^1_m(s) against prod_r L_{m-2r}(s - m/2), r = 0..floor(m/2);
      * L_m(sigma) against the rho-normalized quotient
        L^1_m(sigma + m/2) / L^1_{m-2}(sigma + (m-2)/2) at sigma = s - m/2
        (each numerator/denominator shifted by its own degree, so the
        factorization telescopes exactly).
    Both are exact algebraic identities; deviations are pure float noise.
    """
    lhs = serre_factor(m, theta, q, s)
    rhs = 1.0
    for r in range(m // 2 + 1):
        rhs *= tate_factor(m - 2 * r, theta, q, s - m / 2.0)
    dev_fact = abs(lhs - rhs)

    dev_quot = 0.0
    if m >= 2:
        sigma = s - m / 2.0
        quot = serre_factor(m, theta, q, sigma + m / 2.0) / serre_factor(
            m - 2, theta, q, sigma + (m - 2) / 2.0
        )
        dev_quot = abs(tate_factor(m, theta, q, sigma) - quot)
    return dev_fact, dev_quot


def factorization_sweep(
    draws: int, seed: int = 0, m_max: int = 6
) -> tuple[list[tuple[int, int, float, int, float, float, float]], float]:
    """Seeded random sweep of both identities over (m, theta, q, s) draws.

    Draws s inside the convergence region s > m/2 + 1; parameter points
    whose worst-case denominator could fall below 1e-6 are screened out.
    Returns the per-draw rows (draw, m, theta, q, s, dev_fact, dev_quot)
    and the maximum deviation seen.
    """
    rng = random.Random(seed)
    qs = [p for p in primes_up_to(1000) if p > 3]
    rows = []
    max_dev = 0.0
    for idx in range(draws):
        m = rng.randint(1, m_max)
        theta = rng.uniform(0.0, math.pi)
        q = rng.choice(qs)
        s = m / 2.0 + rng.uniform(1.05, 4.0)
        x = float(q) ** (m / 2.0 - s)
        # every denominator involved is >= (1 - x)^2
        if (1.0 - x) ** 2 < 1e-6:
            continue
        d_fact, d_quot = verify_factorization(m, theta, q, s)
        max_dev = max(max_dev, d_fact, d_quot)
        rows.append((idx, m, theta, q, s, d_fact, d_quot))
    return rows, max_dev


@dataclass(frozen=True)
class TruncatedProduct:
    """Finite Euler product over a record list, with its convergence label."""

    kind: str
    index: int
    s: float
    n_primes: int
    value: float
    convergent: bool


def truncated_product(
    kind: str, index: int, records: list[TraceRecord], s: float
) -> TruncatedProduct:
    """Product of local factors over the records, reduced in prime order.

    kind "tate" takes index n (convergent for s > 1); kind "serre" takes
    degree m (convergent for s > m/2 + 1).  Out-of-region values are still
    computed but labeled non-convergent.
    """
    if kind == "tate":
        convergent = s > 1.0
        factor = lambda r: tate_factor(index, r.theta_p, r.p, s)
    elif kind == "serre":
        convergent = s > index / 2.0 + 1.0
        factor = lambda r: serre_factor(index, r.theta_p, r.p, s)
    else:
        raise ValueError(f"unknown product kind: {kind!r}")
    val = 1.0
    for rec in records:
        val *= factor(rec)
    return TruncatedProduct(
        kind=kind,
        index=index,
        s=s,
        n_primes=len(records),
        value=val,
        convergent=convergent,
    )


# =============================================================================
# Symbolic pole-order ledger for Phi_i(s) on E^m
# =============================================================================


@dataclass(frozen=True)
class LedgerTerm:
    """One factor L_n(s - shift)^exponent of Phi_i."""

    n: int
    shift: Fraction
    exponent: int


@dataclass(frozen=True)
class EulerLedger:
    """Factorization Phi_i(s) = prod_r L_{i-2r}(s - i/2)^{C(m,r) C(m,i-r)}."""

    m: int
    i: int
    terms: tuple[LedgerTerm, ...]


@dataclass(frozen=True)
class PoleAssumptions:
    """Order of the pole at s = 1 of each L_n, as a swappable hypothesis.

    Defaults encode the standard expectation c_0 = 1, c_2 = -1, all other
    indices holomorphic and nonvanishing (order 0); overrides allow
    exploring alternative behavior.
    """

    overrides: tuple[tuple[int, int], ...] = ()

    def order(self, n: int) -> int:
        for k, v in self.overrides:
            if k == n:
                return v
        if n == 0:
            return 1
        if n == 2:
            return -1
        return 0


def build_ledger(m: int, i: int) -> EulerLedger:
    """Exponent ledger for cohomological degree i on the m-th power.

    Terms run over r = 0..floor(i/2) with n = i - 2r and exponent
    C(m, r) C(m, i-r); vanishing binomials drop their term.
    """
    if m < 1:
        raise ValueError(f"power must be >= 1, got {m}")
    if not 0 <= i <= 2 * m:
        raise ValueError(f"need 0 <= i <= 2m, got i={i}, m={m}")
    shift = Fraction(i, 2)
    terms = []
    for r in range(i // 2 + 1):
        e = comb(m, r) * comb(m, i - r)  # comb is 0 when i - r > m
        if e > 0:
            terms.append(LedgerTerm(n=i - 2 * r, shift=shift, exponent=e))
    return EulerLedger(m=m, i=i, terms=tuple(terms))


def ledger_pole_order(
    ledger: EulerLedger, assumptions: PoleAssumptions | None = None
) -> int:
    """Order of the pole of Phi_i at s = 1 + i/2 (positive = pole).

    Each factor L_n(s - i/2) is evaluated at 1 there, so the order is the
    exponent-weighted sum of the assumed orders c_n.
    """
    cs = assumptions or PoleAssumptions()
    return sum(t.exponent * cs.order(t.n) for t in ledger.terms)


def generic_rank(m: int, i: int) -> int:
    """Algebraic-cycle rank C(m,i)^2 - C(m,i-1) C(m,i+1) on the m-th power."""
    if m < 1:
        raise ValueError(f"power must be >= 1, got {m}")
    if not 0 <= i <= m:
        raise ValueError(f"need 0 <= i <= m, got i={i}, m={m}")

    def c(k: int) -> int:
        return comb(m, k) if 0 <= k <= m else 0

    return c(i) ** 2 - c(i - 1) * c(i + 1)


def symmetric_power_order(
    m: int, assumptions: PoleAssumptions | None = None
) -> int:
    """Order at s = 1 + m/2 of the degree-m symmetric-power L-function.

    Via the factorization, the sum of c_{m-2r} over r = 0..floor(m/2);
    under the default assumptions this is 0 for every m >= 1, the exact
    ledger form of "nonvanishing of L^1_m implies equidistribution".
    """
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    cs = assumptions or PoleAssumptions()
    return sum(cs.order(m - 2 * r) for r in range(m // 2 + 1))


def format_ledger(ledger: EulerLedger) -> str:
    """Text rendering "Phi_i(s) = L_n(s - i/2)^e * ..." for CLI output."""
    if not ledger.terms:
        return f"Phi_{ledger.i}(s) = 1"
    parts = []
    for t in ledger.terms:
        if t.shift == 0:
            arg = "s"
        else:
            arg = f"s - {t.shift}"
        parts.append(f"L_{t.n}({arg})^{t.exponent}")
    return f"Phi_{ledger.i}(s) = " + " * ".join(parts)


def ledger_to_dict(ledger: EulerLedger) -> dict:
    return {
        "m": ledger.m,
        "i": ledger.i,
        "terms": [
            {"n": t.n, "shift": str(t.shift), "exponent": t.exponent}
            for t in ledger.terms
        ],
    }


def ledger_to_json(ledger: EulerLedger) -> str:
    return json.dumps(ledger_to_dict(ledger), sort_keys=True, indent=2)
