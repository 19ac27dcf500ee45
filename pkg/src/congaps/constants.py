"""Numerical constants attached to a modulus q: L(1, chi) for the
non-principal characters, the prime-power correction factor Theta(1), the
Mertens-in-progression constant c(q), the Gamma function on (0, 2], and the
auxiliary products Pi1, Pi2.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.special import digamma

from .characters import Character, CharacterTable, build_character_table, totient
from .errors import DomainError
from .primes import PrimeTable, sieve_primes

EULER_GAMMA = 0.5772156649015329

_BUNDLE_CACHE: dict = {}
_BUNDLE_LOCK = threading.Lock()


def l_one(chi: Character, tol: float = 1e-8) -> complex:
    """L(1, chi) for non-principal chi, within tol.

    Computed as the partial sum of chi(n)/n up to N, with N chosen so the
    Abel-summation tail bound 2*sqrt(q)*log(q)/N (from Polya-Vinogradov)
    is at most tol.  The partial sum itself is evaluated residue class by
    residue class through the digamma identity
    sum_{k<K} 1/(r+kq) = (digamma(r/q+K) - digamma(r/q))/q.
    """
    if chi.is_principal:
        raise DomainError("L(1, chi) diverges for the principal character")
    if not 1e-12 < tol < 1e-2:
        raise DomainError(f"tol must lie in (1e-12, 1e-2), got {tol}")
    q = chi.modulus
    tail_bound = 2.0 * math.sqrt(q) * math.log(q)
    n_terms = max(q, int(math.ceil(tail_bound / tol)))
    total = 0j
    for r in range(1, q):
        if chi.turns[r] is None:
            continue
        k_count = (n_terms - r) // q + 1
        if k_count <= 0:
            continue
        x = r / q
        partial = (digamma(x + k_count) - digamma(x)) / q
        total += chi(r) * partial
    return total


def theta_at_one(q: int, tol: float = 1e-6) -> float:
    """Theta(1): exp of minus the double sum over primes p not dividing q
    with p not congruent to 1 mod q, and exponents m >= 2 with p^m
    congruent to 1 mod q.

    For such p with multiplicative order d (necessarily >= 2), the inner
    sum collapses to -(1/d) * log(1 - p^-d), so
    log Theta(1) = sum_p (1/d) * log(1 - p^-d), truncated at a prime
    cutoff P with tail below 2/P <= tol.
    """
    if q < 3:
        raise DomainError(f"Theta(1) needs q >= 3, got {q}")
    cutoff = max(100, int(math.ceil(2.0 / tol)))
    primes = sieve_primes(cutoff).primes
    log_theta = 0.0
    for p in primes:
        p = int(p)
        if q % p == 0:
            continue
        r = p % q
        if r == 1:
            continue
        d = 2
        x = r * r % q
        while x != 1:
            x = x * r % q
            d += 1
        log_theta += math.log1p(-float(p) ** (-d)) / d
    return math.exp(log_theta)


def c_of_q(
    q: int,
    tol: float = 1e-6,
    table: CharacterTable | None = None,
    l_tol: float = 1e-8,
) -> float:
    """The Mertens-in-progression constant c(q).

    c(1) = 1 and c(2) = 1/2 are fixed; for q >= 3,
    c(q) = Theta(1) * ((phi(q)/q) * prod_{chi != chi0} L(1, chi))^(1/phi(q)),
    taking the real positive phi(q)-th root.
    """
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    if q == 1:
        return 1.0
    if q == 2:
        return 0.5
    table = table or build_character_table(q)
    prod = 1 + 0j
    for chi in table.non_principal():
        prod *= l_one(chi, l_tol)
    if abs(prod.imag) > 1e-9 or prod.real <= 0:
        raise DomainError(
            f"L(1, chi) product for q={q} is not real positive: {prod}"
        )
    phi_q = table.phi_q
    theta1 = theta_at_one(q, tol)
    return theta1 * ((phi_q / q) * prod.real) ** (1.0 / phi_q)


def gamma_function(x: float) -> float:
    """Gamma(x) on (0, 2] (relative error well below 1e-10)."""
    if x <= 0:
        raise DomainError(f"Gamma requires x > 0, got {x}")
    if x > 2:
        raise DomainError(f"Gamma is only exposed on (0, 2], got {x}")
    return math.gamma(x)


def pi1_product(q: int, sigma: float) -> float:
    """Product of (1 + p^-sigma) over the distinct primes dividing q."""
    if sigma <= 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    out = 1.0
    n, d = q, 2
    while d * d <= n:
        if n % d == 0:
            out *= 1.0 + float(d) ** (-sigma)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out *= 1.0 + float(n) ** (-sigma)
    return out


def pi2_product(q: int, Y: float, sigma: float, table: PrimeTable) -> float:
    """Product of (1 + p^-sigma) over primes p <= Y with p = 1 mod q."""
    if sigma <= 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if Y > table.limit:
        raise DomainError(f"Y={Y} exceeds table limit {table.limit}")
    cls = table.residue_class(q, 1 % q)
    cls = cls[cls <= Y]
    if cls.size == 0:
        return 1.0
    return float(np.exp(np.sum(np.log1p(cls.astype(float) ** (-sigma)))))


@dataclass(frozen=True)
class ConstantsBundle:
    """Everything the asymptotic predictions for one modulus need."""

    q: int
    gamma_euler: float
    l_values: tuple[complex, ...]  # one per non-principal character, table order
    theta1: float | None  # None for q < 3
    c_q: float
    gamma_recip: float  # 1 / Gamma(1/phi(q))
    tolerances: dict = field(default_factory=dict)


def constants_bundle(
    q: int, l_tol: float = 1e-8, theta_tol: float = 1e-6
) -> ConstantsBundle:
    """Build (and cache per (q, tolerances)) the constants for modulus q."""
    key = (q, l_tol, theta_tol)
    with _BUNDLE_LOCK:
        if key in _BUNDLE_CACHE:
            return _BUNDLE_CACHE[key]
    phi_q = totient(q)
    if q < 3:
        bundle = ConstantsBundle(
            q=q,
            gamma_euler=EULER_GAMMA,
            l_values=(),
            theta1=None,
            c_q=1.0 if q == 1 else 0.5,
            gamma_recip=1.0 / gamma_function(1.0 / phi_q),
            tolerances={"l_tol": l_tol, "theta_tol": theta_tol},
        )
    else:
        table = build_character_table(q)
        l_values = tuple(l_one(chi, l_tol) for chi in table.non_principal())
        theta1 = theta_at_one(q, theta_tol)
        prod = 1 + 0j
        for v in l_values:
            prod *= v
        c_q = theta1 * ((phi_q / q) * prod.real) ** (1.0 / phi_q)
        bundle = ConstantsBundle(
            q=q,
            gamma_euler=EULER_GAMMA,
            l_values=l_values,
            theta1=theta1,
            c_q=c_q,
            gamma_recip=1.0 / gamma_function(1.0 / phi_q),
            tolerances={"l_tol": l_tol, "theta_tol": theta_tol},
        )
    with _BUNDLE_LOCK:
        _BUNDLE_CACHE[key] = bundle
    return bundle
