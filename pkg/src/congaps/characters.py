"""Dirichlet characters mod q with exact root-of-unity ("turn") arithmetic.

A character value is either None (residue not coprime to q) or a Fraction
k/m in [0, 1), standing for e^{2*pi*i*k/m}.  Turn addition mod 1 makes
complete multiplicativity, closure, and orthogonality exactly testable;
conversion to floating complex happens only at the boundary.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import DomainError

MAX_MODULUS = 10**6


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n as (p, e) pairs, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def totient(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def _smallest_primitive_root(pe: int, p: int) -> int:
    """Smallest primitive root mod p^e for odd prime p."""
    phi = totient(pe)
    prime_divs = [f for f, _ in factorize(phi)]
    g = 2
    while True:
        if gcd(g, pe) == 1 and all(pow(g, phi // f, pe) != 1 for f in prime_divs):
            return g
        g += 1


def _local_generators(pe: int, p: int, e: int) -> list[tuple[int, int]]:
    """Generators (residue mod p^e, order) of the unit group of Z/p^e."""
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]  # -1 mod 4
        return [(pe - 1, 2), (5, 2 ** (e - 2))]  # {-1, 5}
    return [(_smallest_primitive_root(pe, p), totient(pe))]


def _crt_lift(residue: int, pe: int, q: int) -> int:
    """The residue mod q that is `residue` mod pe and 1 mod q/pe."""
    rest = q // pe
    if rest == 1:
        return residue % q
    inv = pow(rest, -1, pe)
    return (1 + rest * ((residue - 1) * inv % pe)) % q


def _unit_group(q: int) -> tuple[list[int], list[int], dict[int, tuple[int, ...]]]:
    """Generators of (Z/qZ)*, their orders, and a discrete-log table.

    Returns (generators, orders, dlog) where dlog maps each coprime residue
    to its exponent vector over the generators.
    """
    gens: list[int] = []
    orders: list[int] = []
    for p, e in factorize(q):
        pe = p**e
        for local_g, order in _local_generators(pe, p, e):
            gens.append(_crt_lift(local_g, pe, q))
            orders.append(order)
    dlog: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(d) for d in orders)):
        r = 1
        for g, e in zip(gens, exps):
            r = r * pow(g, e, q) % q
        dlog[r] = exps
    if q == 1:
        dlog[0] = ()
    return gens, orders, dlog


@dataclass(frozen=True)
class Character:
    """One Dirichlet character mod q; `turns[r]` is None off the coprime
    residues, otherwise the exact turn of the value at r."""

    modulus: int
    turns: tuple  # length q; Fraction in [0, 1) or None
    is_principal: bool
    order: int
    exponents: tuple[int, ...] = field(default=())  # coordinates in the dual group

    def turn(self, n: int) -> Fraction | None:
        return self.turns[n % self.modulus]

    def __call__(self, n: int) -> complex:
        return evaluate(self, n)


@dataclass(frozen=True)
class CharacterTable:
    """The full group of phi(q) characters mod q, principal first, then
    lexicographic in generator exponents."""

    q: int
    phi_q: int
    characters: tuple[Character, ...]
    orders: tuple[int, ...] = field(default=())  # cyclic component orders
    _dlog: dict = field(default_factory=dict, repr=False, compare=False)

    def non_principal(self) -> tuple[Character, ...]:
        return self.characters[1:]

    def product(self, chi1: Character, chi2: Character) -> Character:
        """Pointwise product, looked up in the table (group closure)."""
        if chi1.modulus != self.q or chi2.modulus != self.q:
            raise DomainError("characters do not belong to this table")
        exps = tuple(
            (e1 + e2) % d
            for e1, e2, d in zip(chi1.exponents, chi2.exponents, self.orders)
        )
        for chi in self.characters:
            if chi.exponents == exps:
                return chi
        raise DomainError("characters do not belong to this table")


def build_character_table(q: int) -> CharacterTable:
    """Construct all phi(q) Dirichlet characters mod q."""
    if not 1 <= q <= MAX_MODULUS:
        raise DomainError(f"q must satisfy 1 <= q <= {MAX_MODULUS}, got {q}")
    gens, orders, dlog = _unit_group(q)
    phi_q = math.prod(orders)
    characters = []
    for exps in itertools.product(*(range(d) for d in orders)):
        turns: list[Fraction | None] = [None] * max(q, 1)
        for r, xs in dlog.items():
            t = Fraction(0)
            for e, x, d in zip(exps, xs, orders):
                t += Fraction(e * x, d)
            turns[r % max(q, 1)] = t % 1
        order = 1
        for e, d in zip(exps, orders):
            order = math.lcm(order, d // gcd(e, d))
        characters.append(
            Character(
                modulus=q,
                turns=tuple(turns),
                is_principal=all(e == 0 for e in exps),
                order=order,
                exponents=exps,
            )
        )
    return CharacterTable(
        q=q,
        phi_q=phi_q,
        characters=tuple(characters),
        orders=tuple(orders),
        _dlog=dlog,
    )


def evaluate(chi: Character, n: int) -> complex:
    """chi(n) as a unit complex number, or exactly 0 off the coprime residues."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    t = chi.turn(n)
    if t is None:
        return 0j
    if t == 0:
        return 1 + 0j
    return cmath.exp(2j * cmath.pi * t)


def orthogonality_sum(table: CharacterTable, n: int) -> complex:
    """Sum of chi(n) over all characters mod q.

    Evaluated exactly: the sum factors over the cyclic components of the
    dual group, and each factor is a full geometric sum of roots of unity
    (d if the component discrete log vanishes, else 0).
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    q = table.q
    if q == 1:
        return complex(1)
    r = n % q
    if gcd(r, q) > 1:
        return 0j
    xs = table._dlog[r]
    total = 1
    for x, d in zip(xs, table.orders):
        total *= d if x % d == 0 else 0
    return complex(total)
