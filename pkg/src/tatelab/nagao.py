"""Rank heuristics for elliptic surfaces y^2 = x^3 + A(T)x + B(T) over Q(T).

For each prime the fibral average A_p is the exact rational
-(1/p) sum_t sum_x chi(x^3 + A(t)x + B(t)); singular fibers are included,
with the point count taken on the full Weierstrass cubic.  The prime
average -(1/X) sum_{p<=X} A_p log p and the Dirichlet-series residue proxy
are the two rank estimators built on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

import numpy as np

from .arith import PrimeCtx, char_table, primes_up_to

# Work cap rationale: total cost to cutoff X is sum p^2 ~ X^3 / (3 log X).
DEFAULT_X_BUDGET = 5000


def _poly_norm(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(int(v) for v in c)


def poly_add(a, b) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _poly_norm(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def poly_mul(a, b) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_norm(out)


def poly_scale(a, k: int) -> tuple[int, ...]:
    return _poly_norm([k * v for v in a])


def poly_eval(a, t: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * t + c
    return acc


def _poly_eval_mod_all(a: tuple[int, ...], p: int) -> np.ndarray:
    """Values a(t) mod p for t = 0..p-1, Horner over an int64 vector."""
    t = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(a):
        acc = (acc * t + c % p) % p
    return acc


@dataclass(frozen=True)
class SurfaceQT:
    """Integer-coefficient polynomials A(T), B(T), stored low-to-high."""

    A_poly: tuple[int, ...]
    B_poly: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "A_poly", _poly_norm(self.A_poly))
        object.__setattr__(self, "B_poly", _poly_norm(self.B_poly))
        if all(c == 0 for c in self.discriminant_poly):
            raise ValueError("degenerate surface: 4A(T)^3 + 27B(T)^2 = 0")

    @property
    def discriminant_poly(self) -> tuple[int, ...]:
        a3 = poly_mul(poly_mul(self.A_poly, self.A_poly), self.A_poly)
        b2 = poly_mul(self.B_poly, self.B_poly)
        return poly_add(poly_scale(a3, 4), poly_scale(b2, 27))


def is_isotrivial(surface: SurfaceQT) -> bool:
    """True when the j-invariant is constant in T (A^3 proportional to B^2)."""
    a3 = poly_mul(poly_mul(surface.A_poly, surface.A_poly), surface.A_poly)
    b2 = poly_mul(surface.B_poly, surface.B_poly)
    if a3 == (0,) or b2 == (0,):
        return True
    return poly_scale(a3, b2[-1]) == poly_scale(b2, a3[-1])


def make_section_surface(A_poly, Px, Qy) -> SurfaceQT:
    """Surface with B(T) = Qy(T)^2 - Px(T)^3 - A(T) Px(T), carrying (Px, Qy)
    as an exact section; degenerate discriminants are rejected."""
    A = _poly_norm(A_poly)
    Px = _poly_norm(Px)
    Qy = _poly_norm(Qy)
    B = poly_add(
        poly_mul(Qy, Qy),
        poly_scale(poly_add(poly_mul(poly_mul(Px, Px), Px), poly_mul(A, Px)), -1),
    )
    return SurfaceQT(A_poly=A, B_poly=B)


def fibral_average(
    surface: SurfaceQT, p: int, ctx: PrimeCtx | None = None
) -> Fraction:
    """Exact fibral trace average A_p = -(1/p) sum_t sum_x chi(f_t(x)).

    Every fiber t = 0..p-1 is included, singular ones too: the projective
    point count on the Weierstrass cubic gives a_p(E_t) = -sum_x chi(f_t(x))
    for all fibers, so no smooth-locus correction applies.
    """
    if ctx is not None and ctx.p != p:
        raise ValueError(f"context prime {ctx.p} != {p}")
    if ctx is None:
        PrimeCtx(p)  # rejects composite or tiny p
    chi = char_table(p)
    x = np.arange(p, dtype=np.int64)
    x3 = (x * x % p) * x % p
    at = _poly_eval_mod_all(surface.A_poly, p)
    bt = _poly_eval_mod_all(surface.B_poly, p)
    total = 0
    # fixed row blocks with a reused buffer keep the per-element cost flat
    # in p, so the per-prime work is genuinely O(p^2)
    rows = min(128, p)
    buf = np.empty((rows, p), dtype=np.int64)
    for lo in range(0, p, rows):
        hi = min(lo + rows, p)
        block = buf[: hi - lo]
        np.multiply(at[lo:hi, None], x[None, :], out=block)
        block += x3[None, :]
        block += bt[lo:hi, None]
        block %= p
        total += int(chi[block].sum(dtype=np.int64))
    return Fraction(-total, p)


def _fibral_chunk(args) -> list[tuple[int, Fraction]]:
    surface, chunk = args
    return [(p, fibral_average(surface, p)) for p in chunk]


def fibral_averages(
    surface: SurfaceQT,
    X: int,
    workers: int = 1,
    exclude: frozenset[int] = frozenset(),
    x_budget: int = DEFAULT_X_BUDGET,
) -> list[tuple[int, Fraction]]:
    """(p, A_p) for primes 3 < p <= X, in prime order.

    Primes of bad reduction of the surface itself are included by default;
    the exclude set is an opt-in escape hatch.  Cutoffs beyond x_budget are
    refused unless the budget is raised explicitly.
    """
    if X < 5:
        raise ValueError(f"cutoff must be >= 5, got {X}")
    if X > x_budget:
        raise ValueError(
            f"cutoff {X} exceeds the work budget {x_budget}; raise x_budget "
            "explicitly to run larger sweeps"
        )
    ps = [p for p in primes_up_to(X) if p > 3 and p not in exclude]
    if workers <= 1 or len(ps) < 2 * workers:
        return [(p, fibral_average(surface, p)) for p in ps]
    chunks = [ps[i::workers] for i in range(workers)]
    with Pool(workers) as pool:
        parts = pool.map(_fibral_chunk, [(surface, c) for c in chunks])
    merged = [pair for part in parts for pair in part]
    merged.sort()
    return merged


@dataclass(frozen=True)
class NagaoReport:
    """Fibral averages up to X with the Tauberian sum and a residue grid."""

    X: int
    fibral: tuple[tuple[int, Fraction], ...]
    tauberian: float
    residue_grid: tuple[tuple[float, float], ...] = ()


def tauberian_from_pairs(pairs, X: int) -> float:
    """-(1/X) sum over the pairs of A_p log p, reduced in prime order."""
    return -math.fsum(float(a) * math.log(p) for p, a in pairs) / X


def tauberian_sum(
    surface: SurfaceQT,
    X: int,
    workers: int = 1,
    exclude: frozenset[int] = frozenset(),
    x_budget: int = DEFAULT_X_BUDGET,
) -> NagaoReport:
    """Rank estimate -(1/X) sum_{p<=X} A_p log p with per-prime data retained."""
    pairs = fibral_averages(
        surface, X, workers=workers, exclude=exclude, x_budget=x_budget
    )
    return NagaoReport(
        X=X, fibral=tuple(pairs), tauberian=tauberian_from_pairs(pairs, X)
    )


def residue_estimate(
    surface: SurfaceQT,
    X: int,
    deltas,
    workers: int = 1,
    pairs=None,
    x_budget: int = DEFAULT_X_BUDGET,
) -> list[tuple[float, float]]:
    """Residue proxies delta * D(1 + delta), D(s) = -sum A_p log(p) p^-s.

    Diagnostic only: the series is truncated at X, and the proxy converges
    to the residue only jointly in X -> infinity, delta -> 0.
    """
    deltas = list(deltas)
    if any(d <= 0 for d in deltas):
        raise ValueError("residue grid offsets must be positive")
    if pairs is None:
        pairs = fibral_averages(surface, X, workers=workers, x_budget=x_budget)
    out = []
    for d in deltas:
        s = 1.0 + d
        dval = -math.fsum(float(a) * math.log(p) * p**-s for p, a in pairs)
        out.append((d, d * dval))
    return out
