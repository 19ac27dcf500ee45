"""Census of consecutive prime pairs p_r, p_{r+1} <= X lying in the same
residue class a mod q with gap below epsilon * log p_r, plus the two
lower-bound reference curves it is juxtaposed with.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .characters import totient
from .errors import DomainError, OutOfRangeError
from .primes import PrimeTable


@dataclass(frozen=True)
class CensusResult:
    X: int
    q: int
    a: int
    epsilon: float
    pair_count: int
    bound_thm11: float
    bound_shiu: float
    wall_time_ms: float
    pairs: tuple[tuple[int, int], ...] | None = None

    def to_dict(self, sample_cap: int = 100) -> dict:
        sample = []
        if self.pairs is not None:
            sample = [list(p) for p in self.pairs[:sample_cap]]
        return {
            "X": self.X,
            "q": self.q,
            "a": self.a,
            "epsilon": self.epsilon,
            "pair_count": self.pair_count,
            "bound_thm11": self.bound_thm11,
            "bound_shiu": self.bound_shiu,
            "sample_pairs": sample,
            "wall_time_ms": self.wall_time_ms,
        }


def find_congruent_pairs(
    X: int,
    q: int,
    a: int,
    epsilon: float,
    table: PrimeTable,
    keep_pairs: bool = True,
    thm11_c: float = 1.0,
    shiu_C: float = 1.0,
) -> CensusResult:
    """Single pass over consecutive prime pairs with p_r <= X.

    Both reference bounds are informational; they are attached when their
    iterated logarithms are defined, else reported as NaN.
    """
    if math.gcd(a, q) != 1:
        raise DomainError(f"a={a} and q={q} must be coprime")
    if q < 3:
        raise DomainError(f"q must be >= 3, got {q}")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon}")
    if X > table.limit:
        raise OutOfRangeError(f"X={X} exceeds table limit {table.limit}")

    start = time.perf_counter()
    primes = table.primes
    lo = primes[:-1]
    hi = primes[1:]
    a_mod = a % q
    mask = (
        (lo <= X)
        & (lo % q == a_mod)
        & (hi % q == a_mod)
        & ((hi - lo) < epsilon * np.log(lo.astype(float)))
    )
    idx = np.flatnonzero(mask)
    pair_count = int(idx.size)
    pairs = None
    if keep_pairs:
        pairs = tuple((int(lo[i]), int(hi[i])) for i in idx)

    try:
        b11 = theorem11_bound(X, thm11_c)
    except DomainError:
        b11 = math.nan
    try:
        bsh = shiu_bound(X, q, a, shiu_C)
    except DomainError:
        bsh = math.nan
    elapsed = (time.perf_counter() - start) * 1000.0
    return CensusResult(
        X=X,
        q=q,
        a=a,
        epsilon=epsilon,
        pair_count=pair_count,
        bound_thm11=b11,
        bound_shiu=bsh,
        wall_time_ms=elapsed,
        pairs=pairs,
    )


def theorem11_bound(X: float, c: float) -> float:
    """X^(1 - c/loglog X)."""
    if X < 16:
        raise DomainError(f"need X >= 16 so loglog X > 0, got {X}")
    if c <= 0:
        raise DomainError(f"c must be > 0, got {c}")
    return X ** (1.0 - c / math.log(math.log(X)))


def shiu_bound(X: float, q: int, a: int, C: float) -> float:
    """X^(1 - eps(X)) with eps(X) = C*(logloglog X/loglog X)^(1/phi(q)) when
    a = +-1 mod q, and the (logloglog X)^2/(loglog X * loglogloglog X)
    variant otherwise."""
    if C <= 0:
        raise DomainError(f"C must be > 0, got {C}")
    phi_q = totient(q)
    ll = math.log(math.log(X)) if X > math.e else -1.0
    if ll <= 0 or math.log(ll) <= 0:
        raise DomainError(f"iterated logs not positive at X={X}")
    lll = math.log(ll)
    if a % q in (1 % q, (q - 1) % q):
        eps = C * (lll / ll) ** (1.0 / phi_q)
    else:
        if math.log(lll) <= 0:
            raise DomainError(f"loglogloglog X not positive at X={X}")
        llll = math.log(lll)
        eps = C * (lll**2 / (ll * llll)) ** (1.0 / phi_q)
    return X ** (1.0 - eps)
