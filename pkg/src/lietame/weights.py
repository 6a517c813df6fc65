from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import InputError


@dataclass(frozen=True)
class WeightVector:
    """Strictly positive weights m_1, ..., m_d of a quasi-homogeneous filtration.

    Entries may be half-integers (transversal slice weights of odd sl2 weights).
    """

    m: tuple

    def __post_init__(self):
        m = tuple(Fraction(x) for x in self.m)
        if any(x <= 0 for x in m):
            raise InputError(f"weights must be strictly positive: {m}")
        object.__setattr__(self, "m", m)

    def __len__(self):
        return len(self.m)

    def __iter__(self):
        return iter(self.m)

    @property
    def total(self) -> Fraction:
        return sum(self.m, Fraction(0))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.m)

    def primitive(self) -> tuple[tuple, Fraction]:
        """(relatively prime positive integers p, scale s) with m = s * p."""
        if not self.m:
            return (), Fraction(1)
        den = lcm(*(x.denominator for x in self.m))
        ints = [int(x * den) for x in self.m]
        g = gcd(*ints)
        return tuple(i // g for i in ints), Fraction(g, den)
