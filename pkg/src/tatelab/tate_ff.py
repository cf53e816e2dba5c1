"""Eigenvalue-multiplicity bookkeeping for powers E^m over a finite field.

For the Frobenius pair (a, q) write the eigenvalues as alpha = sqrt(q) u,
beta = sqrt(q) conj(u) with u on the unit circle.  A Kunneth word
(e_1..e_m) in {0,1,2}^m with sum 2j indexes an eigenvalue of Frobenius on
H^{2j}(E^m): if the word has t twos and its 2j-2t H^1 slots pick r alphas
and s betas, the eigenvalue is q^j u^{r-s}.  It equals q^j exactly when
u^{r-s} = 1, so multiplicity counting reduces to knowing the multiplicative
order of u -- decided here by exact integer tests on a^2, never by floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .curves import FrobeniusPair

M_MAX = 8


@dataclass(frozen=True)
class AngleClass:
    """Multiplicative order of u = alpha/sqrt(q): a root-of-unity order d,
    or None when u has infinite order (the generic, non-exceptional case)."""

    order: int | None
    a: int
    q: int

    @property
    def kind(self) -> str:
        if self.order is None:
            return "infinite_order"
        return f"root_of_unity({self.order})"


def classify(fp: FrobeniusPair) -> AngleClass:
    """Exact angle classification from a^2 against {0, q, 2q, 3q, 4q}.

    2cos(theta) = a/sqrt(q) lies in {0, +-1, +-sqrt2, +-sqrt3, +-2} exactly
    when a^2 is in {0, q, 2q, 3q, 4q}; the sign of a fixes the order d in
    {1,2,3,4,6,8,12}.  Any other a gives infinite order.
    """
    a, q = fp.a, fp.q
    a2 = a * a
    if a2 == 4 * q:
        d = 1 if a > 0 else 2
    elif a2 == 3 * q:
        d = 12
    elif a2 == 2 * q:
        d = 8
    elif a2 == q:
        d = 6 if a > 0 else 3
    elif a == 0:
        d = 4
    else:
        return AngleClass(order=None, a=a, q=q)
    return AngleClass(order=d, a=a, q=q)


def tate_multiplicity(fp: FrobeniusPair, m: int, j: int) -> int:
    """Multiplicity of q^j among the Frobenius eigenvalues on H^{2j}(E^m).

    Closed combinatorial form: sum over t (count of degree-2 slots, so
    o = 2j-2t degree-1 slots and m-t-o degree-0 slots) of the number of
    slot assignments m!/(t! o! (m-t-o)!) times the number of alpha/beta
    choices r with u^{2r-o} = 1.
    """
    if not 1 <= j <= m <= M_MAX:
        raise ValueError(f"need 1 <= j <= m <= {M_MAX}, got m={m}, j={j}")
    d = classify(fp).order
    total = 0
    for t in range(max(0, 2 * j - m), j + 1):
        o = 2 * j - 2 * t
        z = m - t - o
        if z < 0:
            continue
        words = factorial(m) // (factorial(t) * factorial(o) * factorial(z))
        if d is None:
            # infinite order: u^{2r-o} = 1 forces r = o/2 (o is even)
            good = comb(o, o // 2)
        else:
            good = sum(comb(o, r) for r in range(o + 1) if (2 * r - o) % d == 0)
        total += words * good
    return total


def zeta_pole_order(fp: FrobeniusPair, m: int, j: int) -> int:
    """Order of the pole of zeta(E^m, s) at s = j.

    By semisimplicity this equals the eigenvalue multiplicity; kept as a
    named alias for the zeta-side API.
    """
    return tate_multiplicity(fp, m, j)
