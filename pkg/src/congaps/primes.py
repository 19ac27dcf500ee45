"""Segmented prime sieve, residue-class prime counts, smallest-prime-factor
tables, and an optional binary on-disk prime cache.

The sieve is odd-only and processes fixed-size segments, so memory stays
O(segment) + O(primes up to sqrt(limit)) during construction.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import CacheError, CapacityError, DomainError, OutOfRangeError

MAX_SIEVE_LIMIT = 2**32
SEGMENT_SIZE = 1 << 20  # integers per segment; cache-friendly default
CACHE_MAGIC = b"PRIMTBL1"
CACHE_ENV = "CONGAPS_CACHE_DIR"


@dataclass
class PrimeTable:
    """All primes up to `limit`, ascending, with lazy residue-class indexing."""

    limit: int
    primes: np.ndarray  # int64, strictly increasing
    _residue_index: dict = field(default_factory=dict, repr=False, compare=False)

    def count_upto(self, t: int) -> int:
        """Number of primes <= t."""
        if t > self.limit:
            raise OutOfRangeError(f"t={t} exceeds table limit {self.limit}")
        return int(np.searchsorted(self.primes, t, side="right"))

    def residue_class(self, q: int, a: int) -> np.ndarray:
        """Subsequence of primes congruent to a mod q (built lazily, cached)."""
        if q < 1 or not 0 <= a < q:
            raise DomainError(f"need q >= 1 and 0 <= a < q, got q={q}, a={a}")
        key = (q, a)
        if key not in self._residue_index:
            self._residue_index[key] = self.primes[self.primes % q == a]
        return self._residue_index[key]


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def sieve_primes(
    limit: int,
    segment_size: int = SEGMENT_SIZE,
    max_limit: int = MAX_SIEVE_LIMIT,
) -> PrimeTable:
    """Sieve all primes up to `limit` (inclusive) into a PrimeTable."""
    if limit < 0:
        raise DomainError(f"limit must be >= 0, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"limit {limit} exceeds configured maximum {max_limit}")
    if limit < 2:
        return PrimeTable(limit, np.empty(0, dtype=np.int64))

    base = _simple_sieve(math.isqrt(limit))
    odd_base = base[base > 2]
    chunks = [np.array([2], dtype=np.int64)]

    # odd-only segments: segment covers integers [low, high)
    low = 3
    while low <= limit:
        high = min(low + segment_size, limit + 1)
        n_odd = (high - low + 1) // 2
        mask = np.ones(n_odd, dtype=bool)
        for p in odd_base:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2 :: p] = False
        chunks.append(low + 2 * np.flatnonzero(mask).astype(np.int64))
        low = high if high % 2 == 1 else high + 1

    return PrimeTable(limit, np.concatenate(chunks))


def prime_count_ap(table: PrimeTable, t: int, q: int, a: int) -> int:
    """Count primes p <= t with p congruent to a mod q."""
    if t > table.limit:
        raise OutOfRangeError(f"t={t} exceeds table limit {table.limit}")
    if q < 1 or not 0 <= a < q:
        raise DomainError(f"need q >= 1 and 0 <= a < q, got q={q}, a={a}")
    cls = table.residue_class(q, a)
    return int(np.searchsorted(cls, t, side="right"))


@dataclass
class SpfTable:
    """spf[n] = smallest prime factor of n (spf[1] = 1)."""

    limit: int
    spf: np.ndarray  # int64, length limit + 1

    def factor(self, n: int) -> list[int]:
        """Distinct prime factors of n, ascending."""
        if not 1 <= n <= self.limit:
            raise OutOfRangeError(f"n={n} outside [1, {self.limit}]")
        out = []
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            out.append(p)
            while n % p == 0:
                n //= p
        return out


def build_spf(limit: int, max_limit: int = MAX_SIEVE_LIMIT) -> SpfTable:
    """Smallest-prime-factor table for every n <= limit."""
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"limit {limit} exceeds configured maximum {max_limit}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    untouched = np.flatnonzero(spf == 0)
    spf[untouched] = untouched  # primes above sqrt(limit), plus 0 and 1
    if limit >= 1:
        spf[1] = 1
    spf[0] = 0
    return SpfTable(limit, spf)


# --- binary prime cache -------------------------------------------------
#
# File layout: 8-byte magic "PRIMTBL1", little-endian u64 limit, then the
# primes as little-endian u64, ascending.


def cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV)


def cache_path(limit: int, directory: str | None = None) -> str:
    directory = directory or cache_dir() or "."
    return os.path.join(directory, f"primes_{limit}.bin")


def save_cache(table: PrimeTable, path: str | None = None) -> str:
    path = path or cache_path(table.limit)
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<Q", table.limit))
        fh.write(table.primes.astype("<u8").tobytes())
    return path


def load_cache(path: str, expected_limit: int | None = None) -> PrimeTable:
    """Load a prime cache file; header limit must match any expected limit."""
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != CACHE_MAGIC:
            raise CacheError(f"bad magic in {path!r}: {magic!r}")
        (limit,) = struct.unpack("<Q", fh.read(8))
        if expected_limit is not None and limit != expected_limit:
            raise CacheError(
                f"cache {path!r} holds limit {limit}, requested {expected_limit}"
            )
        body = fh.read()
    primes = np.frombuffer(body, dtype="<u8").astype(np.int64)
    if primes.size and (np.any(np.diff(primes) <= 0) or primes[-1] > limit):
        raise CacheError(f"cache {path!r} body is not ascending primes <= limit")
    return PrimeTable(int(limit), primes)


def get_prime_table(limit: int, directory: str | None = None) -> PrimeTable:
    """Load the cache for `limit` if present, else sieve (and cache if a
    cache directory is configured)."""
    directory = directory or cache_dir()
    if directory:
        path = cache_path(limit, directory)
        if os.path.exists(path):
            return load_cache(path, expected_limit=limit)
    table = sieve_primes(limit)
    if directory:
        os.makedirs(directory, exist_ok=True)
        save_cache(table, cache_path(limit, directory))
    return table
