"""Elliptic curves over F_p and over Q: point counts, trace sequences, angles.

The mandatory counting algorithm is the O(p) character sum
a_p = -sum_x chi(x^3 + Ax + B); extension-field counts come from the
two-term eigenvalue recurrence in exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .arith import PrimeCtx, char_table, is_prime, primes_up_to


@dataclass(frozen=True)
class CurveQ:
    """Short Weierstrass model y^2 = x^3 + Ax + B with integer A, B."""

    A: int
    B: int

    def __post_init__(self) -> None:
        if self.discriminant == 0:
            raise ValueError(f"singular model: 4*{self.A}^3 + 27*{self.B}^2 = 0")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.A**3 + 27 * self.B**2)


@dataclass(frozen=True)
class TraceRecord:
    """Good-prime datum: trace a_p and normalized angle theta_p in [0, pi]."""

    p: int
    a_p: int
    theta_p: float


@dataclass(frozen=True)
class FrobeniusPair:
    """Exact (a, q) data for the Frobenius eigenvalue pair over F_q.

    The eigenvalues are the roots of x^2 - a x + q; q = p^n with the base
    prime and exponent recorded so base extensions can be chained.
    """

    a: int
    q: int
    p: int
    n: int = 1

    def __post_init__(self) -> None:
        if self.p**self.n != self.q:
            raise ValueError(f"q = {self.q} is not {self.p}^{self.n}")
        if self.a * self.a > 4 * self.q:
            raise ValueError(f"Hasse bound violated: {self.a}^2 > 4*{self.q}")

    @classmethod
    def from_prime(cls, a: int, p: int) -> FrobeniusPair:
        return cls(a=a, q=p, p=p, n=1)


def frobenius_angle(a: int, q: int) -> float:
    """theta = arccos(a / (2 sqrt q)), clipped against rounding at the ends."""
    c = a / (2.0 * math.sqrt(q))
    return math.acos(min(1.0, max(-1.0, c)))


def reduce_mod(curve: CurveQ, p: int) -> tuple[int, int] | None:
    """Reduced coefficients (A mod p, B mod p), or None at bad reduction.

    p | discriminant marks bad reduction; p <= 3 is rejected outright
    (short Weierstrass reduction theory at 2 and 3 is out of scope).
    """
    if p <= 3 or not is_prime(p):
        raise ValueError(f"reduction requires a prime p > 3, got {p}")
    if curve.discriminant % p == 0:
        return None
    return curve.A % p, curve.B % p


def trace_fp(A: int, B: int, ctx: PrimeCtx) -> int:
    """Trace of Frobenius via the character sum; #E(F_p) = p + 1 - a_p.

    The reduced curve must be nonsingular mod p.
    """
    p = ctx.p
    A %= p
    B %= p
    if (4 * A**3 + 27 * B**2) % p == 0:
        raise ValueError(f"singular reduction mod {p}: (A, B) = ({A}, {B})")
    chi = char_table(p)
    x = np.arange(p, dtype=np.int64)
    fx = ((x * x % p) * x + A * x + B) % p
    return -int(chi[fx].sum(dtype=np.int64))


def _trace_chunk(args: tuple[int, int, list[int]]) -> list[tuple[int, int]]:
    A, B, chunk = args
    return [(p, trace_fp(A, B, PrimeCtx(p))) for p in chunk]


def trace_sequence(curve: CurveQ, X: int, workers: int = 1) -> list[TraceRecord]:
    """One TraceRecord per good prime 3 < p <= X, in increasing p.

    Deterministic: each prime's trace is an exact integer, so the merged
    output is identical for any worker count.
    """
    if X < 5:
        raise ValueError(f"cutoff must be >= 5, got {X}")
    good = [p for p in primes_up_to(X) if p > 3 and curve.discriminant % p != 0]
    pairs = compute_traces(curve, good, workers)
    return [TraceRecord(p, a, frobenius_angle(a, p)) for p, a in pairs]


def compute_traces(
    curve: CurveQ, primes: list[int], workers: int = 1
) -> list[tuple[int, int]]:
    """(p, a_p) for the given good primes, merged in prime order."""
    if workers <= 1 or len(primes) < 2 * workers:
        return [(p, trace_fp(curve.A, curve.B, PrimeCtx(p))) for p in primes]
    chunks = [primes[i::workers] for i in range(workers)]
    with Pool(workers) as pool:
        parts = pool.map(_trace_chunk, [(curve.A, curve.B, c) for c in chunks])
    merged = [pair for part in parts for pair in part]
    merged.sort()
    return merged


def extension_trace(fp: FrobeniusPair, n: int) -> FrobeniusPair:
    """Frobenius data over F_{q^n} via t_0 = 2, t_1 = a, t_k = a t_{k-1} - q t_{k-2}.

    Python integers are unbounded, so large degrees widen instead of wrapping.
    """
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    t_prev, t_cur = 2, fp.a
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, fp.a * t_cur - fp.q * t_prev
    return FrobeniusPair(a=t_cur, q=fp.q**n, p=fp.p, n=fp.n * n)


def zeta_numerator(fp: FrobeniusPair) -> tuple[int, int, int]:
    """Coefficients (c0, c1, c2) of P_1(t) = 1 - a t + q t^2."""
    return (1, -fp.a, fp.q)


def local_zeta(fp: FrobeniusPair, s: float) -> float:
    """Local zeta value P_1(q^-s) / ((1 - q^-s)(1 - q^{1-s})) at real s."""
    q = float(fp.q)
    u = q**-s
    den = (1.0 - u) * (1.0 - q * u)
    if den == 0.0:
        raise ValueError(f"local zeta pole at s = {s}")
    return (1.0 - fp.a * u + fp.q * u * u) / den
