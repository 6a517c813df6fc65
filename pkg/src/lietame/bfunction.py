from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError

KINDS = ("monodromic", "regular", "general")


@dataclass(frozen=True)
class BFunction:
    """Monic polynomial prod (T - rho) stored as its root multiset.

    ``total_weight`` is the sum of the filtration weights; the polynomial is tame
    when every root is strictly greater than ``-total_weight``.
    """

    roots: tuple
    total_weight: Fraction
    kind: str = "regular"
    filtration_note: str = field(default="", compare=False)

    def __post_init__(self):
        roots = tuple(sorted((Fraction(r) for r in self.roots), reverse=True))
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "total_weight", Fraction(self.total_weight))
        if self.kind not in KINDS:
            raise InputError(f"unknown b-function kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def min_root(self) -> Fraction | None:
        return self.roots[-1] if self.roots else None

    @property
    def margin(self) -> Fraction | None:
        """min root + total weight; None for the constant polynomial."""
        if not self.roots:
            return None
        return self.roots[-1] + self.total_weight

    @property
    def tame(self) -> bool:
        return not self.roots or self.roots[-1] > -self.total_weight

    def coefficients(self) -> list[Fraction]:
        """Coefficients of prod (T - rho), highest power first."""
        coeffs = [Fraction(1)]
        for r in self.roots:
            coeffs = [a - r * b for a, b in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
        return coeffs

    def rescaled(self, factor) -> "BFunction":
        """Roots and total weight divided by ``factor`` (weight renormalization)."""
        factor = Fraction(factor)
        return BFunction(
            tuple(r / factor for r in self.roots),
            self.total_weight / factor,
            self.kind,
            self.filtration_note,
        )

    def __str__(self):
        if not self.roots:
            return "1"
        out = []
        for r in self.roots:
            if r == 0:
                out.append("T")
            elif r > 0:
                out.append(f"(T-{r})")
            else:
                out.append(f"(T+{-r})")
        return "".join(out)
