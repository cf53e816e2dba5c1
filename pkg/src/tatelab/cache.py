"""On-disk trace cache: one text file per curve, extended only upward in p.

Format is exactly one header line "curve,A,B" followed by "p,a_p" lines in
strictly increasing p.  Corrupt caches (bad header, unsorted primes, Hasse
violations) are refused outright, never repaired in place.
"""

from __future__ import annotations

from pathlib import Path

from filelock import FileLock

from .arith import primes_up_to
from .curves import CurveQ, TraceRecord, compute_traces, frobenius_angle


class CacheError(ValueError):
    """A cache file failed validation against its requesting curve."""


def cache_path(cache_dir: str | Path, curve: CurveQ) -> Path:
    return Path(cache_dir) / f"trace_A{curve.A}_B{curve.B}.csv"


def read_cache(path: Path, curve: CurveQ) -> list[tuple[int, int]]:
    """Validated (p, a_p) pairs from an existing cache file."""
    lines = path.read_text().splitlines()
    if not lines:
        raise CacheError(f"{path}: empty cache file")
    head = lines[0].split(",")
    if len(head) != 3 or head[0] != "curve":
        raise CacheError(f"{path}: malformed header {lines[0]!r}")
    try:
        a_h, b_h = int(head[1]), int(head[2])
    except ValueError as exc:
        raise CacheError(f"{path}: malformed header {lines[0]!r}") from exc
    if (a_h, b_h) != (curve.A, curve.B):
        raise CacheError(
            f"{path}: header curve ({a_h},{b_h}) != requested ({curve.A},{curve.B})"
        )
    pairs: list[tuple[int, int]] = []
    last_p = 0
    for ln in lines[1:]:
        if not ln.strip():
            continue
        try:
            p_s, a_s = ln.split(",")
            p, a = int(p_s), int(a_s)
        except ValueError as exc:
            raise CacheError(f"{path}: malformed line {ln!r}") from exc
        if p <= last_p:
            raise CacheError(f"{path}: primes not strictly increasing at {p}")
        if a * a > 4 * p:
            raise CacheError(f"{path}: Hasse violation at p={p}, a_p={a}")
        pairs.append((p, a))
        last_p = p
    return pairs


def write_cache(path: Path, curve: CurveQ, pairs: list[tuple[int, int]]) -> None:
    body = [f"curve,{curve.A},{curve.B}"]
    body += [f"{p},{a}" for p, a in pairs]
    path.write_text("\n".join(body) + "\n")


def load_or_extend(
    curve: CurveQ, X: int, cache_dir: str | Path, workers: int = 1
) -> list[TraceRecord]:
    """Records for good primes 3 < p <= X, reusing and extending the cache.

    Cached primes are never recomputed; only primes above the cached
    maximum are filled in.  Writes hold an exclusive lock.
    """
    if X < 5:
        raise ValueError(f"cutoff must be >= 5, got {X}")
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, curve)
    lock = FileLock(str(path) + ".lock")
    with lock:
        pairs = read_cache(path, curve) if path.exists() else []
        have_max = pairs[-1][0] if pairs else 3
        if X > have_max:
            new_primes = [
                p
                for p in primes_up_to(X)
                if p > have_max and curve.discriminant % p != 0
            ]
            if new_primes:
                pairs = pairs + compute_traces(curve, new_primes, workers)
                write_cache(path, curve, pairs)
    return [
        TraceRecord(p, a, frobenius_angle(a, p)) for p, a in pairs if p <= X
    ]
