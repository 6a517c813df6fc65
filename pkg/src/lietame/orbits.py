"""Nilpotent orbits of classical simple Lie algebras.

Orbits are labelled by partitions (Jordan types in the natural module). The
sl2-weights of an orbit are the highest weights of the irreducible summands of
the adjoint module under a Jacobson-Morozov triple; they are computed purely
from Clebsch-Gordan and plethysm rules for sl2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ConsistencyError, InputError
from .rootsys import parse_type_label
from .weights import WeightVector


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise InputError(f"partition parts must be positive: {parts}")
        if list(parts) != sorted(parts, reverse=True):
            raise InputError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        try:
            parts = [int(p) for p in text.replace(" ", "").split(",") if p]
        except ValueError:
            raise InputError(f"cannot parse partition {text!r}") from None
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


def partitions(n: int, max_part: int | None = None):
    """All partitions of n, largest first, parts weakly decreasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


# sl2 representation combinatorics: V_a is the irreducible module of highest weight a


def clebsch_gordan(a: int, b: int) -> list[int]:
    """V_a (x) V_b = sum of V_c for c = |a-b|, |a-b|+2, ..., a+b."""
    return list(range(abs(a - b), a + b + 1, 2))


def alt_square(a: int) -> list[int]:
    """Lambda^2 V_a = V_{2a-2} + V_{2a-6} + ..."""
    return list(range(2 * a - 2, -1, -4))


def sym_square(a: int) -> list[int]:
    """Sym^2 V_a = V_{2a} + V_{2a-4} + ..."""
    return list(range(2 * a, -1, -4))


def _tensor(mods_a, mods_b):
    out = []
    for a in mods_a:
        for b in mods_b:
            out.extend(clebsch_gordan(a, b))
    return out


def _square(mods, single):
    # Lambda^2 / Sym^2 of a direct sum: diagonal pieces plus cross tensor products
    out = []
    for i, a in enumerate(mods):
        out.extend(single(a))
        for b in mods[i + 1:]:
            out.extend(clebsch_gordan(a, b))
    return out


_DIM = {
    "A": lambda l: l * (l + 2),
    "B": lambda l: l * (2 * l + 1),
    "C": lambda l: l * (2 * l + 1),
    "D": lambda l: l * (2 * l - 1),
}


def natural_size(letter: str, l: int) -> int:
    return {"A": l + 1, "B": 2 * l + 1, "C": 2 * l, "D": 2 * l}[letter]


def _simple_factor(label: str) -> tuple[str, int]:
    factors = parse_type_label(label)
    if len(factors) != 1:
        raise InputError(f"{label!r} is not simple")
    letter, l = factors[0]
    if letter not in _DIM:
        raise InputError(f"nilpotent orbits of exceptional type {label} are not supported")
    return letter, l


def is_admissible(letter: str, part: Partition) -> bool:
    mult = part.multiplicities()
    if letter == "A":
        return True
    if letter in ("B", "D"):
        return all(m % 2 == 0 for p, m in mult.items() if p % 2 == 0)
    return all(m % 2 == 0 for p, m in mult.items() if p % 2 == 1)


def sl2_weights_simple(letter: str, part: Partition) -> list[int]:
    """Highest weights of the irreducible summands of the adjoint module."""
    natural = [p - 1 for p in part.parts]
    if letter == "A":
        mods = _tensor(natural, natural)
        mods.remove(0)
    elif letter in ("B", "D"):
        mods = _square(natural, alt_square)
    else:
        mods = _square(natural, sym_square)
    return sorted(mods, reverse=True)


@dataclass(frozen=True)
class NilpotentOrbit:
    """Nilpotent orbit of a (possibly non-simple) classical semisimple algebra.

    ``partitions`` holds one partition per simple factor of ``algebra_type``.
    """

    algebra_type: str
    partitions: tuple

    @property
    def partition(self) -> Partition:
        if len(self.partitions) != 1:
            raise InputError(f"{self.algebra_type} is not simple; use .partitions")
        return self.partitions[0]

    @cached_property
    def factors(self) -> list[tuple[str, int]]:
        return parse_type_label(self.algebra_type)

    @property
    def dim_algebra(self) -> int:
        return sum(_DIM[letter](l) for letter, l in self.factors)

    @cached_property
    def sl2_weights(self) -> tuple:
        return tuple(sl2_weights(self))

    @property
    def codim(self) -> int:
        return len(self.sl2_weights)

    @property
    def dim_orbit(self) -> int:
        return self.dim_algebra - self.codim

    def is_zero(self) -> bool:
        return all(p.parts and max(p.parts) == 1 for p in self.partitions)

    def label(self) -> str:
        return "|".join(str(p) for p in self.partitions)

    def __str__(self):
        return f"{self.algebra_type}[{self.label()}]"


def enumerate_orbits(algebra_type: str) -> list[NilpotentOrbit]:
    """All nilpotent orbits of a simple classical algebra, regular orbit first.

    Very even type D partitions label two orbits with identical numerical data;
    they are listed once.
    """
    letter, l = _simple_factor(algebra_type)
    size = natural_size(letter, l)
    label = f"{letter}{l}"
    out = []
    for parts in partitions(size):
        p = Partition(parts)
        if is_admissible(letter, p):
            out.append(NilpotentOrbit(label, (p,)))
    return out


def product_orbits(algebra_type: str) -> list[NilpotentOrbit]:
    """Nilpotent orbits of a product algebra: tuples of orbits of the factors."""
    factors = parse_type_label(algebra_type)
    per_factor = [enumerate_orbits(f"{a}{r}") for a, r in factors]
    out = [NilpotentOrbit(algebra_type, ())]
    for orbs in per_factor:
        out = [NilpotentOrbit(algebra_type, o.partitions + (q.partition,)) for o in out for q in orbs]
    return out


def make_orbit(algebra_type: str, parts: Sequence) -> NilpotentOrbit:
    """Validated orbit from one partition per simple factor."""
    factors = parse_type_label(algebra_type)
    parts = [p if isinstance(p, Partition) else Partition(tuple(sorted(p, reverse=True))) for p in parts]
    if len(parts) != len(factors):
        raise InputError(f"{algebra_type} needs {len(factors)} partitions, got {len(parts)}")
    for (letter, l), p in zip(factors, parts):
        if letter not in _DIM:
            raise InputError(f"exceptional factor {letter}{l} is not supported")
        if p.size != natural_size(letter, l) or not is_admissible(letter, p):
            raise InputError(f"{p} does not label a nilpotent orbit of {letter}{l}")
    return NilpotentOrbit(algebra_type, tuple(parts))


def sl2_weights(orbit: NilpotentOrbit) -> list[int]:
    """Multiset of lambda_i, sorted descending; checks sum(lambda_i + 1) = dim g."""
    weights = []
    for (letter, l), p in zip(orbit.factors, orbit.partitions):
        if p.size != natural_size(letter, l):
            raise InputError(f"partition {p} has wrong size for {letter}{l}")
        w = sl2_weights_simple(letter, p)
        if sum(x + 1 for x in w) != _DIM[letter](l):
            raise ConsistencyError(f"sl2 weights of {letter}{l}[{p}] do not sum to dim g")
        weights.extend(w)
    return sorted(weights, reverse=True)


def orbit_codim(orbit: NilpotentOrbit) -> int:
    """Codimension r = number of irreducible summands (= dim of the centralizer of Y).

    Type A factors are cross-checked against sum (transpose parts)^2 - 1.
    """
    r = len(orbit.sl2_weights)
    expected = 0
    for (letter, l), p in zip(orbit.factors, orbit.partitions):
        w = sl2_weights_simple(letter, p)
        if letter == "A":
            t = p.transpose().parts
            if len(w) != sum(x * x for x in t) - 1:
                raise ConsistencyError(f"codim mismatch for A{l}[{p}]")
        expected += len(w)
    if expected != r:
        raise ConsistencyError("codim mismatch across factors")
    return r


def transversal_weights(orbit: NilpotentOrbit) -> tuple[WeightVector, Fraction]:
    """Weights lambda_i/2 + 1 on the transversal slice and their total (n + r)/2."""
    lam = orbit.sl2_weights
    m = WeightVector(tuple(Fraction(x, 2) + 1 for x in lam))
    total = m.total
    if total != Fraction(orbit.dim_algebra + len(lam), 2):
        raise ConsistencyError(f"transversal weight total {total} != (n+r)/2 for {orbit}")
    return m, total
