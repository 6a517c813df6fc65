"""Exact Weyl algebra over Q and the origin b-function machinery.

A :class:`WeylOp` is stored in normal order: every term is c * x^alpha D^beta
with all multiplications left of all derivations.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .bfunction import BFunction
from .errors import ConsistencyError, InputError, ResourceError, StructuralError
from .exactalg import MultiPoly
from .weights import WeightVector

DEFAULT_MAX_N = 3
DEFAULT_MAX_POWER = 5


class WeylOp:
    """Element of the Weyl algebra Q<x_1..x_n, D_1..D_n> in normal order."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms=None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != nv or len(b) != nv or min(a + b, default=0) < 0:
                raise StructuralError(f"bad exponent pair {(a, b)}")
            c = Fraction(c)
            if c:
                key = (a, b)
                s = clean.get(key, 0) + c
                if s:
                    clean[key] = s
                else:
                    clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _raw(cls, variables, terms):
        op = cls.__new__(cls)
        op.variables = variables
        op.terms = terms
        return op

    # constructors

    @classmethod
    def coordinates(cls, n: int) -> tuple:
        return tuple(f"x{i + 1}" for i in range(n))

    @classmethod
    def constant(cls, variables, c=1):
        variables = tuple(variables)
        z = (0,) * len(variables)
        c = Fraction(c)
        return cls._raw(variables, {(z, z): c} if c else {})

    @classmethod
    def x(cls, variables, i: int):
        variables = tuple(variables)
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {(e, (0,) * len(variables)): Fraction(1)})

    @classmethod
    def d(cls, variables, i: int):
        variables = tuple(variables)
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {((0,) * len(variables), e): Fraction(1)})

    @classmethod
    def monomial(cls, variables, alpha, beta, c=1):
        return cls(variables, {(tuple(alpha), tuple(beta)): c})

    @classmethod
    def euler(cls, variables, weights=None):
        """sum m_i x_i D_i (the plain Euler field theta when weights are omitted)."""
        variables = tuple(variables)
        n = len(variables)
        weights = [1] * n if weights is None else list(weights)
        terms = {}
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            terms[(e, e)] = weights[i]
        return cls(variables, terms)

    @classmethod
    def from_symbol(cls, p: MultiPoly, variables=None):
        """Constant-coefficient operator p(D) from a polynomial in the dual variables."""
        variables = tuple(variables) if variables is not None else cls.coordinates(len(p.variables))
        if len(variables) != len(p.variables):
            raise StructuralError("symbol and operator have different numbers of variables")
        z = (0,) * len(variables)
        return cls._raw(variables, {(z, e): c for e, c in p.terms.items()})

    @classmethod
    def from_function(cls, f: MultiPoly, variables=None):
        """Multiplication operator by the polynomial f(x)."""
        variables = tuple(variables) if variables is not None else tuple(f.variables)
        z = (0,) * len(variables)
        return cls._raw(variables, {(e, z): c for e, c in f.terms.items()})

    # arithmetic

    def _check(self, other):
        if not isinstance(other, WeylOp):
            raise StructuralError(f"cannot combine WeylOp with {type(other).__name__}")
        if other.variables != self.variables:
            raise StructuralError(f"variable lists differ: {self.variables} vs {other.variables}")

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return WeylOp.constant(self.variables, other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return WeylOp._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return WeylOp._raw(self.variables, {k: v * c for k, v in self.terms.items()} if c else {})
        return normal_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        result = WeylOp.constant(self.variables, 1)
        for _ in range(k):
            result = normal_product(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.constant(self.variables, other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def order(self) -> int:
        """Usual order (highest total D-degree); -1 for the zero operator."""
        return max((sum(b) for (_, b) in self.terms), default=-1)

    def principal_part(self) -> "WeylOp":
        d = self.order
        return WeylOp._raw(self.variables, {k: c for k, c in self.terms.items() if sum(k[1]) == d})

    def has_constant_coefficients(self) -> bool:
        return all(not any(a) for (a, _) in self.terms)

    def symbol(self, dual_names=None) -> MultiPoly:
        """Principal symbol as a polynomial in the dual variables; must not depend on x."""
        top = self.principal_part()
        if not top.has_constant_coefficients():
            raise InputError("principal symbol depends on x")
        names = tuple(dual_names) if dual_names else tuple(f"xi{i + 1}" for i in range(len(self.variables)))
        return MultiPoly(names, {b: c for (_, b), c in top.terms.items()})

    def apply(self, f: MultiPoly) -> MultiPoly:
        """Act on a polynomial function in the same variables."""
        if f.variables != self.variables:
            raise StructuralError("operator and function over different variables")
        result = MultiPoly.zero(self.variables)
        for (a, b), c in self.terms.items():
            g = f
            for name, k in zip(self.variables, b):
                for _ in range(k):
                    g = g.diff(name)
                if not g:
                    break
            if g:
                result = result + g * MultiPoly.monomial(self.variables, a, c)
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda t: (sum(t[0][0]) + sum(t[0][1]), t[0]), reverse=True):
            factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, a) if k]
            factors += [f"D{v}" if k == 1 else f"D{v}^{k}" for v, k in zip(self.variables, b) if k]
            mono = "*".join(factors)
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
        return f"WeylOp({self})"


_REORDER_CACHE: dict = {}


def _reorder(b: int, c: int):
    """D^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) D^(b-k), as (k, coefficient) pairs."""
    key = (b, c)
    hit = _REORDER_CACHE.get(key)
    if hit is None:
        hit = [(k, comb(b, k) * factorial(c) // factorial(c - k)) for k in range(min(b, c) + 1)]
        _REORDER_CACHE[key] = hit
    return hit


def normal_product(a: WeylOp, b: WeylOp) -> WeylOp:
    """Exact product a*b, normal-ordered with [D_i, x_j] = delta_ij."""
    a._check(b)
    out: dict = {}
    n = len(a.variables)
    for (a1, b1), c1 in a.terms.items():
        for (a2, b2), c2 in b.terms.items():
            per_var = [_reorder(b1[i], a2[i]) for i in range(n)]
            base = c1 * c2
            for choice in itertools.product(*per_var):
                coef = base
                xs, ds = [], []
                for i, (k, m) in enumerate(choice):
                    coef *= m
                    xs.append(a1[i] + a2[i] - k)
                    ds.append(b1[i] + b2[i] - k)
                key = (tuple(xs), tuple(ds))
                out[key] = out.get(key, 0) + coef
    return WeylOp._raw(a.variables, {k: c for k, c in out.items() if c})


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    return normal_product(a, b) - normal_product(b, a)


# combinatorial identities


def multinomial_slice_sum(beta: Sequence[int], N: int) -> int:
    """sum over alpha <= beta, |alpha| = N, of prod C(beta_i, alpha_i); checked against C(|beta|, N)."""
    beta = tuple(int(b) for b in beta)
    if any(b < 0 for b in beta):
        raise InputError("beta must be a nonnegative multi-index")
    M = sum(beta)
    if N < 0 or N > M:
        raise InputError(f"N={N} must satisfy 0 <= N <= |beta|={M}")
    total = 0
    for alpha in itertools.product(*(range(b + 1) for b in beta)):
        if sum(alpha) != N:
            continue
        term = 1
        for ai, bi in zip(alpha, beta):
            term *= factorial(bi) // (factorial(ai) * factorial(bi - ai))
        total += term
    if total != comb(M, N):
        raise ConsistencyError(f"slice sum {total} != C({M},{N})")
    return total


def compositions(N: int, n: int):
    """Exponent vectors of length n with total N, in lexicographic order."""
    for bars in itertools.combinations(range(N + n - 1), n - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(N + n - 1 - prev - 1)
        yield tuple(out)


def falling_euler(variables, N: int) -> WeylOp:
    """theta (theta - 1) ... (theta - N + 1)."""
    theta = WeylOp.euler(variables)
    result = WeylOp.constant(variables, 1)
    for j in range(N):
        result = normal_product(result, theta - j)
    return result


def multinomial_euler_sum(variables, N: int) -> WeylOp:
    """sum_{|alpha| = N} N!/alpha! x^alpha D^alpha."""
    variables = tuple(variables)
    terms = {}
    for alpha in compositions(N, len(variables)):
        den = 1
        for a in alpha:
            den *= factorial(a)
        terms[(alpha, alpha)] = Fraction(factorial(N), den)
    return WeylOp(variables, terms)


def euler_power_identity(
    n: int, N: int, max_n: int = DEFAULT_MAX_N, max_power: int = DEFAULT_MAX_POWER
) -> WeylOp:
    """sum N!/alpha! x^alpha D^alpha - theta(theta-1)...(theta-N+1); zero when the identity holds."""
    if n < 1 or N < 1:
        raise InputError("n and N must be positive")
    if n > max_n or N > max_power:
        raise ResourceError(f"(n={n}, N={N}) exceeds expansion guard (n<={max_n}, N<={max_power})")
    variables = WeylOp.coordinates(n)
    return multinomial_euler_sum(variables, N) - falling_euler(variables, N)


# V-filtration order


def v_order(op: WeylOp, m) -> Fraction | None:
    """max over terms of <m, beta> - <m, alpha>; None for the zero operator.

    Multiplication by x_i lowers the order by m_i, D_i raises it by m_i, so a
    weighted Euler field sits in order 0.
    """
    weights = tuple(m.m) if isinstance(m, WeightVector) else tuple(Fraction(x) for x in m)
    if len(weights) != len(op.variables):
        raise StructuralError("weight vector length differs from the number of variables")
    best = None
    for (a, b) in op.terms:
        v = sum((w * (bi - ai) for w, ai, bi in zip(weights, a, b)), Fraction(0))
        if best is None or v > best:
            best = v
    return best


# graded ideal membership


def monomials_of_degree(n: int, D: int):
    return list(compositions(D, n)) if n else ([()] if D == 0 else [])


class _Echelon:
    """Incremental row echelon basis over Q that remembers how each row was built."""

    def __init__(self):
        self.rows = []  # (pivot, vector, combination)

    def _reduce(self, vec, combo):
        vec = dict(vec)
        combo = dict(combo)
        for pivot, rv, rc in self.rows:
            c = vec.get(pivot)
            if c:
                f = c / rv[pivot]
                for k, v in rv.items():
                    s = vec.get(k, 0) - f * v
                    if s:
                        vec[k] = s
                    else:
                        vec.pop(k, None)
                for k, v in rc.items():
                    s = combo.get(k, 0) - f * v
                    if s:
                        combo[k] = s
                    else:
                        combo.pop(k, None)
        return vec, combo

    def add(self, vec, label):
        vec, combo = self._reduce(vec, {label: Fraction(1)})
        if vec:
            pivot = max(vec)
            self.rows.append((pivot, vec, combo))
            return True
        return False

    def express(self, vec):
        """Combination of added labels equal to vec, or None if vec is outside the span."""
        rest, combo = self._reduce(vec, {})
        if rest:
            return None
        return {k: -v for k, v in combo.items()}

    @property
    def rank(self):
        return len(self.rows)


def _validate_system(p: Sequence[MultiPoly]):
    if not p:
        raise InputError("empty polynomial system")
    variables = p[0].variables
    n = len(variables)
    if len(p) != n:
        raise InputError(f"need exactly {n} polynomials in {n} variables, got {len(p)}")
    for q in p:
        if q.variables != variables:
            raise StructuralError("polynomials over different variable lists")
        if q.is_zero() or not q.is_homogeneous():
            raise InputError(f"{q} is not a nonzero homogeneous polynomial")
        if q.degree == 0:
            raise InputError("a nonzero constant generator has empty zero set, not {0}")
    return variables, n


def _graded_piece(p: Sequence[MultiPoly], D: int):
    """Echelon basis of the degree-D part of the ideal, labels (generator index, multiplier exps)."""
    variables, n = p[0].variables, len(p[0].variables)
    ech = _Echelon()
    for i, q in enumerate(p):
        d = q.degree
        if d > D:
            continue
        for mu in monomials_of_degree(n, D - d):
            vec = {tuple(x + y for x, y in zip(e, mu)): c for e, c in q.terms.items()}
            ech.add(vec, (i, mu))
    return ech


def membership_threshold(p: Sequence[MultiPoly], ceiling: int | None = None) -> int:
    """Least M1 such that every monomial of degree > M1 lies in the ideal (p_1..p_n).

    Decided degree by degree with exact linear algebra. Once one degree is
    full, all higher degrees are too, so the scan stops at the first full one.
    """
    variables, n = _validate_system(p)
    M = sum(q.degree for q in p)
    top = M + 1 if ceiling is None else ceiling
    for D in range(0, top + 1):
        ech = _graded_piece(p, D)
        if ech.rank == comb(D + n - 1, n - 1):
            return D - 1
    raise InputError(
        f"degree-{top} piece of the ideal is not full: common zero set is larger than {{0}}"
    )


def express_in_ideal(p: Sequence[MultiPoly], targets: Iterable[tuple]) -> dict:
    """For each exponent vector alpha, polynomials q_i with xi^alpha = sum q_i p_i."""
    variables, n = _validate_system(p)
    targets = list(targets)
    by_degree: dict = {}
    for t in targets:
        by_degree.setdefault(sum(t), []).append(tuple(t))
    out = {}
    for D, ts in by_degree.items():
        ech = _graded_piece(p, D)
        for t in ts:
            combo = ech.express({t: Fraction(1)})
            if combo is None:
                raise InputError(f"monomial {t} is not in the ideal")
            qs = [MultiPoly.zero(variables) for _ in p]
            for (i, mu), c in combo.items():
                qs[i] = qs[i] + MultiPoly.monomial(variables, mu, c)
            out[t] = qs
        # verify the certificate exactly
        for t in ts:
            lhs = MultiPoly.monomial(variables, t)
            rhs = MultiPoly.zero(variables)
            for qi, pi in zip(out[t], p):
                rhs = rhs + qi * pi
            if lhs != rhs:
                raise ConsistencyError(f"ideal membership certificate for {t} is wrong")
    return out


# origin b-function


def _symbols(P: Sequence[WeylOp]):
    if not P:
        raise InputError("empty operator list")
    variables = P[0].variables
    n = len(variables)
    if len(P) != n:
        raise InputError(f"need exactly {n} operators in {n} variables, got {len(P)}")
    duals = tuple(f"xi{i + 1}" for i in range(n))
    syms = []
    for op in P:
        if op.variables != variables:
            raise StructuralError("operators over different variable lists")
        if op.is_zero():
            raise InputError("zero operator")
        try:
            syms.append(op.symbol(duals))
        except InputError:
            raise InputError(f"symbol degeneracy: principal symbol of {op} depends on x") from None
    return variables, duals, syms


def bfunction_certificate(P: Sequence[WeylOp]) -> tuple[WeylOp, WeylOp, WeylOp]:
    """(b(theta), element of the left ideal generated by P, remainder) with
    b(theta) = ideal element + remainder and the remainder of V-order <= -1 along {0}.

    b(theta) = theta(theta-1)...(theta-N+1) with N = M - n + 1 and M the sum of symbol degrees.
    """
    variables, duals, syms = _symbols(P)
    n = len(variables)
    M = sum(s.degree for s in syms)
    N = M - n + 1
    certs = express_in_ideal(syms, compositions(N, n))
    ideal = WeylOp(variables)
    for alpha, qs in certs.items():
        den = 1
        for a in alpha:
            den *= factorial(a)
        xa = WeylOp.monomial(variables, alpha, (0,) * n, Fraction(factorial(N), den))
        for q, op in zip(qs, P):
            if q:
                ideal = ideal + normal_product(normal_product(xa, WeylOp.from_symbol(q, variables)), op)
    b_op = falling_euler(variables, N)
    remainder = b_op - ideal
    if remainder:
        order = v_order(remainder, [1] * n)
        if order > -1:
            raise ConsistencyError(f"remainder has V-order {order} along the origin, expected <= -1")
    return b_op, ideal, remainder


def bfunction_at_zero(P: Sequence[WeylOp]) -> BFunction:
    """b-function along the origin of D/(P_1..P_n), homogeneous symbols with common zero {0}.

    Roots {0, 1, ..., M - n}. Monodromic when every P_i has constant
    coefficients; otherwise the returned polynomial is a multiple of the true
    b-function.
    """
    variables, duals, syms = _symbols(P)
    n = len(variables)
    M = sum(s.degree for s in syms)
    M1 = membership_threshold(syms)
    if M1 != M - n:
        raise ConsistencyError(f"membership threshold {M1} != M - n = {M - n}")
    constant = all(op.has_constant_coefficients() for op in P)
    for op, s in zip(P, syms):
        tail = op - WeylOp.from_symbol(s, variables)
        if tail and v_order(tail, [1] * n) >= s.degree:
            raise ConsistencyError("lower-order part does not drop the V-order")
    _, _, remainder = bfunction_certificate(P)
    if constant and remainder:
        raise ConsistencyError("constant-coefficient system left a nonzero remainder")
    return BFunction(
        tuple(range(0, M - n + 1)),
        Fraction(n),
        "monodromic" if constant else "general",
        f"V-filtration along the origin, weights (1,...,1) on {n} coordinates",
    )


def bfunction_along_subspace(P: Sequence[WeylOp], transversal: Sequence[int]) -> BFunction:
    """Upper bound for the b-function along L = {x_t = 0 for t in transversal}.

    Every D_t^beta with |beta| = M - n + 1 lies in the symbol ideal, so the
    returned polynomial is a multiple of the b-function along L.
    """
    variables, duals, syms = _symbols(P)
    n = len(variables)
    idx = sorted(set(transversal))
    if not idx or any(i < 0 or i >= n for i in idx):
        raise InputError(f"transversal coordinates {transversal} out of range")
    M = sum(s.degree for s in syms)
    N = M - n + 1
    targets = []
    for beta in compositions(N, len(idx)):
        e = [0] * n
        for i, k in zip(idx, beta):
            e[i] = k
        targets.append(tuple(e))
    express_in_ideal(syms, targets)
    return BFunction(
        tuple(range(0, N)),
        Fraction(len(idx)),
        "general",
        f"multiple of the b-function along the subspace x_i = 0, i in {idx}",
    )
