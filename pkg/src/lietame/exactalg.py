"""Exact arithmetic substrate: rationals, sparse multivariate polynomials over Q,
square matrices of polynomials and their characteristic polynomials.

Rationals are :class:`fractions.Fraction`; every coefficient that enters a
:class:`MultiPoly` is coerced to one.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError, ResourceError, StructuralError

Rational = Fraction
Scalar = Union[int, Fraction]

DEFAULT_MAX_DIM = 16


def max_dim_guard(override: int | None = None) -> int:
    """Charpoly size guard: explicit override, else ``LIETAME_MAX_DIM``, else 16."""
    if override is not None:
        return override
    env = os.environ.get("LIETAME_MAX_DIM")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"LIETAME_MAX_DIM must be an integer, got {env!r}") from None
    return DEFAULT_MAX_DIM


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Polynomial over Q in a fixed ordered list of variables.

    ``terms`` maps exponent tuples to nonzero Fractions. Instances are treated
    as immutable; never mutate ``terms`` after construction.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputError(f"duplicate variable names in {variables}")
        nv = len(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nv or any(e < 0 for e in exps):
                raise StructuralError(f"bad exponent vector {exps} for variables {variables}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.variables = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables, c: Scalar):
        variables = tuple(variables)
        c = Fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def variable(cls, variables, name: str):
        variables = tuple(variables)
        try:
            i = variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, variables, exps, c: Scalar = 1):
        return cls(variables, {tuple(exps): c})

    @classmethod
    def gens(cls, variables):
        return [cls.variable(variables, v) for v in variables]

    # structure

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise StructuralError(
                    f"variable lists differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.variables, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.variables))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    # ring operations

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return self.scale(Fraction(1) / Fraction(c))

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative polynomial power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution

    def diff(self, name: str) -> "MultiPoly":
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MultiPoly._raw(self.variables, out)

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``images[i]`` for the i-th variable. All images share one variable list."""
        if len(images) != len(self.variables):
            raise StructuralError("compose needs one image per variable")
        target = images[0].variables if images else ()
        if any(im.variables != target for im in images):
            raise StructuralError("compose images over different variable lists")
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        result = MultiPoly.zero(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Scalar] | Sequence[Scalar]) -> Fraction:
        if isinstance(point, Mapping):
            point = [point[v] for v in self.variables]
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def restrict_to(self, keep: Sequence[str]) -> "MultiPoly":
        """Set every variable outside ``keep`` to zero and return a polynomial in ``keep``."""
        idx = [self.variables.index(v) for v in keep]
        others = [i for i in range(len(self.variables)) if i not in idx]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in others):
                continue
            out[tuple(e[i] for i in idx)] = c
        return MultiPoly._raw(tuple(keep), out)

    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        """Embed into a larger variable list containing all current variables."""
        variables = tuple(variables)
        pos = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for p, k in zip(pos, e):
                ne[p] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(variables, out)

    # printing

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Exact ring operation ``op`` in {"add", "sub", "mul"}."""
    if a.variables != b.variables:
        raise StructuralError(f"variable lists differ: {a.variables} vs {b.variables}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError(f"unknown operation {op!r}")


class PolyMatrix:
    """Square matrix with MultiPoly entries over one shared variable list."""

    __slots__ = ("size", "entries", "variables")

    def __init__(self, rows: Sequence[Sequence[MultiPoly]]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise StructuralError("PolyMatrix must be square and nonempty")
        polys = [e for r in rows for e in r if isinstance(e, MultiPoly)]
        if not polys:
            raise StructuralError("PolyMatrix needs at least one MultiPoly entry; use from_scalars")
        variables = polys[0].variables
        rows = [[e if isinstance(e, MultiPoly) else MultiPoly.constant(variables, e) for e in r] for r in rows]
        if any(e.variables != variables for r in rows for e in r):
            raise StructuralError("PolyMatrix entries over different variable lists")
        self.size = n
        self.entries = tuple(tuple(r) for r in rows)
        self.variables = variables

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence[Scalar]], variables: Sequence[str] = ()):
        return cls([[MultiPoly.constant(variables, c) for c in r] for r in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.size
        if other.size != n or other.variables != self.variables:
            raise StructuralError("matrix product of incompatible PolyMatrices")
        zero = MultiPoly.zero(self.variables)
        rows = []
        for i in range(n):
            row_a = [(k, a) for k, a in enumerate(self.entries[i]) if a]
            row = []
            for j in range(n):
                acc = zero
                for k, a in row_a:
                    b = other.entries[k][j]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return PolyMatrix(rows)

    def trace(self) -> MultiPoly:
        acc = MultiPoly.zero(self.variables)
        for i in range(self.size):
            acc = acc + self.entries[i][i]
        return acc

    def add_scalar_identity(self, c: MultiPoly) -> "PolyMatrix":
        rows = [list(r) for r in self.entries]
        for i in range(self.size):
            rows[i][i] = rows[i][i] + c
        return PolyMatrix(rows)


def charpoly(M: PolyMatrix, max_dim: int | None = None) -> list[MultiPoly]:
    """Coefficients of det(T*Id - M), highest power of T first.

    Faddeev-LeVerrier: with N_0 = 0 and c_n = 1,
    N_k = M N_{k-1} + c_{n-k+1} Id,  c_{n-k} = -tr(M N_k) / k.
    """
    guard = max_dim_guard(max_dim)
    n = M.size
    if n > guard:
        raise ResourceError(f"charpoly of a {n}x{n} matrix exceeds dimension guard {guard}")
    coeffs = [MultiPoly.constant(M.variables, 1)]
    N = PolyMatrix([[MultiPoly.zero(M.variables)] * n for _ in range(n)])
    for k in range(1, n + 1):
        N = (M @ N).add_scalar_identity(coeffs[-1])
        coeffs.append(_trace_of_product(M, N) / (-k))
    return coeffs


def _trace_of_product(A: PolyMatrix, B: PolyMatrix) -> MultiPoly:
    acc = MultiPoly.zero(A.variables)
    for i in range(A.size):
        for j in range(A.size):
            a = A.entries[i][j]
            if a:
                b = B.entries[j][i]
                if b:
                    acc = acc + a * b
    return acc
