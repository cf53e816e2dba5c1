"""Prime-field arithmetic: sieving, quadratic-residue tables, Legendre symbols.

All point counting in the package sits on top of the two Legendre-symbol
paths implemented here (bit-table lookup and Euler's criterion); they must
agree everywhere, and the table path exists purely for speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Deterministic Miller-Rabin witness set for n < 3.3 * 10^24, far past the
# 63-bit moduli supported here.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for the 64-bit range."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n == w:
            return True
        if n % w == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(x: int) -> list[int]:
    """All primes <= x in increasing order, by sieve of Eratosthenes."""
    if x < 2:
        raise ValueError(f"prime bound must be >= 2, got {x}")
    sieve = bytearray([1]) * (x + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(x**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, x + 1, i)))
    return [i for i in range(2, x + 1) if sieve[i]]


@dataclass(frozen=True)
class PrimeCtx:
    """A prime modulus p > 3 with an optional quadratic-residue bitset.

    When present, bit x of ``qr_table`` is set iff x is a nonzero square
    mod p; exactly (p-1)/2 bits are set.  Instances are immutable and safe
    to share across workers.
    """

    p: int
    qr_table: int | None = None

    def __post_init__(self) -> None:
        if self.p <= 3 or not is_prime(self.p):
            raise ValueError(f"modulus must be a prime > 3, got {self.p}")


def build_qr_table(p: int) -> PrimeCtx:
    """PrimeCtx for p with the residue bitset built by squaring 1..(p-1)/2."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"modulus must be a prime > 3, got {p}")
    mask = 0
    for x in range(1, (p - 1) // 2 + 1):
        mask |= 1 << (x * x % p)
    return PrimeCtx(p, mask)


def legendre(x: int, ctx: PrimeCtx) -> int:
    """Legendre symbol (x/p): 0 if p | x, 1 for nonzero squares, -1 otherwise.

    Uses the residue bitset when the context carries one, Euler's criterion
    (modular exponentiation to (p-1)/2) otherwise.
    """
    p = ctx.p
    x %= p
    if x == 0:
        return 0
    if ctx.qr_table is not None:
        return 1 if (ctx.qr_table >> x) & 1 else -1
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=32)
def char_table(p: int) -> np.ndarray:
    """Vector of Legendre values chi[x] for x = 0..p-1, as int8.

    Bulk-sum companion to :func:`legendre`; built per prime on demand and
    cached (transient working set, one byte per residue).
    """
    if p <= 3 or not is_prime(p):
        raise ValueError(f"modulus must be a prime > 3, got {p}")
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    chi[x * x % p] = 1
    return chi
