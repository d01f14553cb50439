from __future__ import annotations

from dataclasses import dataclass, field

from .arith import Prime
from .errors import InvalidInput


@dataclass(frozen=True)
class FinitePGroup:
    """Finite abelian p-group ``(+) Z/p^k`` stored as sorted exponents.

    ``justification`` carries free-form tags explaining how a value was
    obtained; it does not take part in equality.
    """

    prime: int
    exponents: tuple[int, ...] = ()
    justification: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        Prime(self.prime)
        exps = tuple(sorted(int(e) for e in self.exponents))
        if any(e < 1 for e in exps):
            raise InvalidInput(f"exponents must be positive, got {exps}")
        object.__setattr__(self, "prime", int(self.prime))
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def trivial(cls, p, *justification):
        return cls(p, (), tuple(justification))

    @classmethod
    def cyclic(cls, p, exponent, *justification):
        """``Z/p^exponent``; exponent 0 gives the trivial group."""
        if exponent < 0:
            raise InvalidInput("negative exponent")
        return cls(p, (exponent,) if exponent else (), tuple(justification))

    @classmethod
    def elementary(cls, p, rank, *justification):
        return cls(p, (1,) * rank, tuple(justification))

    def __add__(self, other):
        if not isinstance(other, FinitePGroup):
            return NotImplemented
        if self.prime != other.prime:
            raise InvalidInput("cannot add groups at different primes")
        return FinitePGroup(self.prime, self.exponents + other.exponents,
                            self.justification + other.justification)

    @property
    def valuation(self) -> int:
        """Exponent of the order, i.e. ``log_p |G|``."""
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return self.prime ** self.valuation

    def is_trivial(self) -> bool:
        return not self.exponents

    def order_string(self) -> str:
        return "1" if self.is_trivial() else f"{self.prime}^{self.valuation}"

    def __str__(self):
        if self.is_trivial():
            return "0"
        return " + ".join(f"Z/{self.prime ** e}" for e in self.exponents)
