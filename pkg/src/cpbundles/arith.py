"""Exact integer helpers shared by every other module.

Everything here is plain ``int`` arithmetic; nothing ever touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput

__all__ = [
    "Prime",
    "Residue",
    "as_prime",
    "is_prime",
    "mod_rep",
    "floor_same_residue",
    "p_valuation",
    "atiyah_todd_valuation_bound",
    "is_metastable",
    "ceil_div",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Prime(int):
    """An ``int`` that has been checked to be prime."""

    def __new__(cls, value):
        if isinstance(value, Prime):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidInput(f"prime must be an integer, got {value!r}")
        if not is_prime(value):
            raise InvalidInput(f"{value} is not prime")
        return super().__new__(cls, value)

    def __repr__(self):
        return f"Prime({int(self)})"

    def __str__(self):
        return str(int(self))


def as_prime(p) -> Prime:
    return Prime(p)


@dataclass(frozen=True)
class Residue:
    """Canonical representative ``value`` of a class modulo ``modulus``."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or not 0 <= self.value < self.modulus:
            raise InvalidInput(f"bad residue {self.value} mod {self.modulus}")

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, Residue):
            return (self.value, self.modulus) == (other.value, other.modulus)
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))


def mod_rep(k: int, d: int) -> Residue:
    """Representative of ``k`` modulo ``d`` in ``[0, d)``."""
    if d < 1:
        raise InvalidInput(f"modulus must be positive, got {d}")
    return Residue(k % d, d)


def floor_same_residue(n: int, j: int, p) -> int:
    """Largest integer ``<= n`` congruent to ``j`` modulo ``p - 1``.

    At ``p = 2`` every integer is congruent, so this returns ``n``.
    """
    p = Prime(p)
    return n - (n - j) % (p - 1)


def p_valuation(n: int, p) -> int:
    p = Prime(p)
    if n == 0:
        raise InvalidInput("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def atiyah_todd_valuation_bound(k: int, p) -> int:
    """Lower bound ``floor((k-1)/(p-1))`` for the p-adic valuation of ``M_k``."""
    p = Prime(p)
    if k < 1:
        raise InvalidInput(f"k must be positive, got {k}")
    return (k - 1) // (p - 1)


def is_metastable(r: int, n: int) -> bool:
    """True iff ``n/2 <= r < n``."""
    return 2 * r >= n and r < n


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)
