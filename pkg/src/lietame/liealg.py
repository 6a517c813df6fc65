"""Matrix realizations of classical Lie algebras and the polynomial objects
attached to them: the adjoint characteristic polynomial, the discriminant, the
fundamental vector fields x -> [x, A], the product of positive roots on the
Cartan subalgebra and Chevalley restriction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Sequence

from .errors import ConsistencyError, InputError, ResourceError
from .exactalg import MultiPoly, PolyMatrix, charpoly, max_dim_guard
from .rootsys import RootSystem, is_positive, parse_type_label, weyl_group
from .weylalg import _Echelon

DEFAULT_MAX_REALIZE_DIM = 64


@dataclass(frozen=True)
class LieAlgebraRealization:
    type_label: str
    n: int
    rank: int
    basis: tuple  # basis element names
    coords: tuple  # coordinate function names, one per basis element
    matrices: tuple  # basis elements in the defining representation
    structure_constants: tuple  # c[i][j] = coordinates of [e_i, e_j]
    weights: tuple  # root of each non-Cartan basis element on H_1..H_l

    @property
    def cartan_indices(self) -> tuple:
        return tuple(range(self.rank))

    @property
    def cartan_coords(self) -> tuple:
        return self.coords[: self.rank]

    def index_of(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise InputError(f"basis index {name} out of range")
            return name
        try:
            return self.basis.index(name)
        except ValueError:
            raise InputError(f"unknown basis element {name!r}") from None

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        """Bracket of two coordinate vectors."""
        C = self.structure_constants
        out = [Fraction(0)] * self.n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(C[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    @cached_property
    def positive_root_indices(self) -> tuple:
        return tuple(i for i in range(self.rank, self.n) if is_positive(self.weights[i - self.rank]))


@dataclass(frozen=True)
class InvariantPolynomial:
    poly: MultiPoly
    degree: int


# defining representations


def _zero(N):
    return [[0] * N for _ in range(N)]


def _unit(N, i, j, c=1):
    M = _zero(N)
    M[i][j] = c
    return M


def _freeze(M):
    return tuple(tuple(Fraction(x) for x in row) for row in M)


def _commutator(A, B):
    N = len(A)
    AB = [[sum(A[i][k] * B[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    BA = [[sum(B[i][k] * A[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    return [[AB[i][j] - BA[i][j] for j in range(N)] for i in range(N)]


def _normalize(M):
    flat = [x for row in M for x in row if x]
    if not flat:
        return None
    g = 0
    for x in flat:
        g = gcd(g, int(x))
    sign = 1 if flat[0] > 0 else -1
    return tuple(tuple(Fraction(x) / (g * sign) for x in row) for row in M)


def _form(letter, N, l):
    J = _zero(N)
    if letter in ("B", "D"):
        for i in range(N):
            J[i][N - 1 - i] = 1
    else:
        for i in range(l):
            J[i][N - 1 - i] = 1
            J[N - 1 - i][i] = -1
    return J


def _classical_basis(letter: str, l: int):
    """(cartan matrices, root vector matrices) in the defining representation."""
    if letter == "A":
        N = l + 1
        cartan = []
        for i in range(l):
            M = _zero(N)
            M[i][i], M[i + 1][i + 1] = 1, -1
            cartan.append(M)
        roots = [_unit(N, i, j) for i in range(N) for j in range(N) if i != j]
        return N, cartan, roots
    N = {"B": 2 * l + 1, "C": 2 * l, "D": 2 * l}[letter]
    J = _form(letter, N, l)
    # J^{-1} = J^T up to the sign making J^{-1} J = 1; both forms satisfy J^T J = 1
    Jinv = [[J[j][i] for j in range(N)] for i in range(N)]

    def project(X):
        XT = [[X[j][i] for j in range(N)] for i in range(N)]
        tmp = [[sum(Jinv[i][k] * XT[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
        tmp = [[sum(tmp[i][k] * J[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
        return [[X[i][j] - tmp[i][j] for j in range(N)] for i in range(N)]

    cartan = [project(_unit(N, i, i)) for i in range(l)]
    seen = set()
    roots = []
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            Y = _normalize(project(_unit(N, i, j)))
            if Y is not None and Y not in seen:
                seen.add(Y)
                roots.append([list(r) for r in Y])
    return N, cartan, roots


def _weight(cartan, Y):
    """alpha(H_k) for the root vector Y, read off [H_k, Y] = alpha(H_k) Y."""
    out = []
    pos = next((i, j) for i, row in enumerate(Y) for j, x in enumerate(row) if x)
    for H in cartan:
        Z = _commutator(H, Y)
        out.append(Fraction(Z[pos[0]][pos[1]]) / Fraction(Y[pos[0]][pos[1]]))
        for i, row in enumerate(Y):
            for j, x in enumerate(row):
                if Z[i][j] != out[-1] * x:
                    raise ConsistencyError("basis element is not a root vector")
    return tuple(int(w) if w.denominator == 1 else w for w in out)


_TORUS = re.compile(r"^T(\d+)$")


@lru_cache(maxsize=None)
def realize(type_label: str, max_dim: int = DEFAULT_MAX_REALIZE_DIM) -> LieAlgebraRealization:
    """Matrix model: sl_{l+1}, so_{2l+1}, sp_{2l}, so_{2l} (or an abelian ``T<k>``).

    The Cartan subalgebra is the diagonal part; its basis comes first.
    """
    m = _TORUS.match(type_label.strip()) if isinstance(type_label, str) else None
    if m:
        k = int(m.group(1))
        if k < 1:
            raise InputError("torus rank must be positive")
        mats = tuple(_freeze(_unit(k, i, i)) for i in range(k))
        zero_vec = tuple(Fraction(0) for _ in range(k))
        C = tuple(tuple(zero_vec for _ in range(k)) for _ in range(k))
        return LieAlgebraRealization(
            f"T{k}", k, k, tuple(f"H{i + 1}" for i in range(k)), tuple(f"h{i + 1}" for i in range(k)), mats, C, ()
        )
    factors = parse_type_label(type_label)
    if len(factors) != 1 or factors[0][0] not in "ABCD":
        raise InputError(f"only simple classical types can be realized, got {type_label!r}")
    letter, l = factors[0]
    N, cartan, roots = _classical_basis(letter, l)
    n = l + len(roots)
    if n > max_dim:
        raise ResourceError(f"{type_label} has dimension {n}, above realization guard {max_dim}")
    weighted = [(_weight(cartan, Y), Y) for Y in roots]
    pos = sorted((wy for wy in weighted if is_positive(wy[0])), key=lambda wy: wy[0], reverse=True)
    neg = []
    for w, _ in pos:
        minus = tuple(-x for x in w)
        neg.append(next(wy for wy in weighted if wy[0] == minus))
    ordered = pos + neg
    if len(ordered) != len(roots):
        raise ConsistencyError("root vectors do not pair up under negation")
    mats = [_freeze(H) for H in cartan] + [_freeze(Y) for _, Y in ordered]
    weights = tuple(w for w, _ in ordered)

    if letter == "A" and l == 1:
        basis, coords = ("H", "X", "Y"), ("x", "y", "z")
    else:
        basis = tuple(f"H{i + 1}" for i in range(l)) + tuple(_root_name(Y) for _, Y in ordered)
        coords = tuple(b.lower() for b in basis)

    ech = _Echelon()
    for idx, M in enumerate(mats):
        vec = {(i, j): x for i, row in enumerate(M) for j, x in enumerate(row) if x}
        if not ech.add(vec, idx):
            raise ConsistencyError("basis matrices are linearly dependent")

    def coordinates(Z):
        vec = {(i, j): Fraction(x) for i, row in enumerate(Z) for j, x in enumerate(row) if x}
        combo = ech.express(vec)
        if combo is None:
            raise ConsistencyError("bracket left the algebra")
        return tuple(combo.get(k, Fraction(0)) for k in range(n))

    C = tuple(
        tuple(coordinates(_commutator(mats[i], mats[j])) for j in range(n)) for i in range(n)
    )
    L = LieAlgebraRealization(f"{letter}{l}", n, l, basis, coords, tuple(mats), C, weights)
    check_antisymmetry(L)
    return L


def _root_name(Y):
    i, j = next((i, j) for i, row in enumerate(Y) for j, x in enumerate(row) if x)
    return f"E{i + 1}_{j + 1}"


def check_antisymmetry(L: LieAlgebraRealization) -> bool:
    C = L.structure_constants
    for i in range(L.n):
        for j in range(L.n):
            if any(a != -b for a, b in zip(C[i][j], C[j][i])):
                raise ConsistencyError(f"[e{i}, e{j}] != -[e{j}, e{i}]")
    return True


def jacobi_defect(L: LieAlgebraRealization, i: int, j: int, k: int) -> tuple:
    e = [tuple(Fraction(1 if a == b else 0) for a in range(L.n)) for b in range(L.n)]
    C = L.structure_constants
    t1 = L.bracket(C[i][j], e[k])
    t2 = L.bracket(C[j][k], e[i])
    t3 = L.bracket(C[k][i], e[j])
    return tuple(a + b + c for a, b, c in zip(t1, t2, t3))


def check_jacobi(L: LieAlgebraRealization) -> bool:
    """Jacobi identity for every basis triple, exactly."""
    for i in range(L.n):
        for j in range(L.n):
            for k in range(L.n):
                if any(jacobi_defect(L, i, j, k)):
                    raise ConsistencyError(f"Jacobi fails on ({L.basis[i]}, {L.basis[j]}, {L.basis[k]})")
    return True


# polynomial layer


def generic_point(L: LieAlgebraRealization) -> list[MultiPoly]:
    return MultiPoly.gens(L.coords)


def ad_matrix(L: LieAlgebraRealization) -> PolyMatrix:
    """ad(X) at the generic point X = sum c_i e_i; entry (k, j) is the e_k-coordinate of [X, e_j]."""
    n = L.n
    C = L.structure_constants
    rows = []
    for k in range(n):
        row = []
        for j in range(n):
            terms = {}
            for i in range(n):
                c = C[i][j][k]
                if c:
                    terms[tuple(1 if t == i else 0 for t in range(n))] = c
            row.append(MultiPoly(L.coords, terms))
        rows.append(row)
    return PolyMatrix(rows)


def generic_matrix(L: LieAlgebraRealization) -> PolyMatrix:
    """The generic element sum c_i M_i in the defining representation."""
    N = len(L.matrices[0])
    gens = generic_point(L)
    rows = []
    for r in range(N):
        row = []
        for s in range(N):
            acc = MultiPoly.zero(L.coords)
            for g, M in zip(gens, L.matrices):
                if M[r][s]:
                    acc = acc + g * M[r][s]
            row.append(acc)
        rows.append(row)
    return PolyMatrix(rows)


@lru_cache(maxsize=None)
def ad_charpoly(L: LieAlgebraRealization, max_dim: int | None = None) -> tuple:
    """Coefficients of det(T Id - ad X), T^n first."""
    return tuple(charpoly(ad_matrix(L), max_dim_guard(max_dim)))


def discriminant(L: LieAlgebraRealization, max_dim: int | None = None) -> InvariantPolynomial:
    """The coefficient of T^l in det(T Id - ad X).

    Checks that the lower coefficients vanish identically and that the result
    is homogeneous of degree n - l.
    """
    guard = max_dim_guard(max_dim)
    if L.n > guard:
        raise ResourceError(f"dim {L.type_label} = {L.n} exceeds charpoly guard {guard}")
    coeffs = ad_charpoly(L, guard)
    lam = list(reversed(coeffs))  # lam[i] is the coefficient of T^i
    for i in range(L.rank):
        if lam[i]:
            raise ConsistencyError(f"coefficient of T^{i} does not vanish identically")
    delta = lam[L.rank]
    if not delta:
        raise ConsistencyError(f"coefficient of T^{L.rank} vanishes: rank is not {L.rank}")
    if not delta.is_homogeneous() or delta.degree != L.n - L.rank:
        raise ConsistencyError(f"discriminant is not homogeneous of degree {L.n - L.rank}")
    return InvariantPolynomial(delta, delta.degree)


def tau_field(L: LieAlgebraRealization, A) -> list[MultiPoly]:
    """Coordinates of [x, A] at the generic point x, one linear polynomial per basis element."""
    a = L.index_of(A)
    C = L.structure_constants
    out = []
    for k in range(L.n):
        terms = {}
        for i in range(L.n):
            c = C[i][a][k]
            if c:
                terms[tuple(1 if t == i else 0 for t in range(L.n))] = c
        out.append(MultiPoly(L.coords, terms))
    return out


def apply_field(field: Sequence[MultiPoly], f: MultiPoly) -> MultiPoly:
    """The vector field sum field_k d/dc_k applied to f as a derivation."""
    acc = MultiPoly.zero(f.variables)
    for name, coef in zip(f.variables, field):
        if coef:
            d = f.diff(name)
            if d:
                acc = acc + coef * d
    return acc


def is_invariant(L: LieAlgebraRealization, Q: MultiPoly) -> bool:
    return all(not apply_field(tau_field(L, a), Q) for a in range(L.n))


# Cartan subalgebra: roots, pi, Weyl action


def root_form(L: LieAlgebraRealization, idx: int) -> MultiPoly:
    """The root of basis element ``idx`` as a linear form in the Cartan coordinates."""
    w = L.weights[idx - L.rank]
    l = L.rank
    return MultiPoly(L.cartan_coords, {tuple(1 if t == k else 0 for t in range(l)): w[k] for k in range(l)})


def _negative_partner(L, idx):
    w = L.weights[idx - L.rank]
    minus = tuple(-x for x in w)
    return L.rank + L.weights.index(minus)


def simple_root_indices(L: LieAlgebraRealization) -> list[int]:
    pos = L.positive_root_indices
    ws = {L.weights[i - L.rank] for i in pos}
    sums = {tuple(a + b for a, b in zip(u, v)) for u in ws for v in ws}
    return [i for i in pos if L.weights[i - L.rank] not in sums]


def reflection_images(L: LieAlgebraRealization, idx: int) -> list[MultiPoly]:
    """Images of the Cartan coordinates under the reflection in the root of ``idx``.

    s(h) = h - alpha(h) h_alpha, with h_alpha = [e_alpha, e_-alpha] scaled so alpha(h_alpha) = 2.
    """
    l = L.rank
    j = _negative_partner(L, idx)
    hvec = L.structure_constants[idx][j]
    if any(hvec[l:]):
        raise ConsistencyError("[e_alpha, e_-alpha] is not in the Cartan subalgebra")
    w = L.weights[idx - l]
    pairing = sum(Fraction(w[k]) * hvec[k] for k in range(l))
    if not pairing:
        raise ConsistencyError("alpha vanishes on its coroot")
    coroot = [Fraction(2) * hvec[k] / pairing for k in range(l)]
    alpha = root_form(L, idx)
    gens = MultiPoly.gens(L.cartan_coords)
    return [gens[k] - alpha * coroot[k] for k in range(l)]


def cartan_weyl_group(L: LieAlgebraRealization, max_order: int = 10**5) -> list[tuple]:
    """Weyl group acting on Cartan coordinates, as rational matrices (rows = images)."""
    l = L.rank
    gens = []
    for idx in simple_root_indices(L):
        imgs = reflection_images(L, idx)
        gens.append(
            tuple(
                tuple(img.coefficient(tuple(1 if t == c else 0 for t in range(l))) for c in range(l))
                for img in imgs
            )
        )
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(l)) for i in range(l))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(
                    tuple(sum(s[i][k] * g[k][j] for k in range(l)) for j in range(l)) for i in range(l)
                )
                if h not in seen:
                    seen.add(h)
                    elems.append(h)
                    nxt.append(h)
                    if len(elems) > max_order:
                        raise ResourceError("Weyl group exceeds order guard")
        frontier = nxt
    return elems


def _act(L, g, f: MultiPoly) -> MultiPoly:
    l = L.rank
    images = [
        MultiPoly(L.cartan_coords, {tuple(1 if t == c else 0 for t in range(l)): g[k][c] for c in range(l)})
        for k in range(l)
    ]
    return f.compose(images)


def pi_polynomial(L: LieAlgebraRealization) -> MultiPoly:
    """Product of the positive roots as a polynomial on the Cartan subalgebra."""
    pi = MultiPoly.constant(L.cartan_coords, 1)
    for i in L.positive_root_indices:
        pi = pi * root_form(L, i)
    return pi


def pi_square_check(L: LieAlgebraRealization, rs: RootSystem | None = None, delta=None):
    """(pi, ratio) with Delta restricted to the Cartan subalgebra = ratio * pi^2.

    Also checks that each simple reflection sends pi to -pi and, when ``rs`` is
    given, that the realization matches it (positive root count, Weyl order).
    """
    pi = pi_polynomial(L)
    if rs is not None:
        if rs.rank != L.rank or len(rs.positive) != len(L.positive_root_indices):
            raise ConsistencyError(f"realization {L.type_label} does not match root system {rs.type_label}")
        if len(cartan_weyl_group(L)) != weyl_group(rs).order:
            raise ConsistencyError("Weyl group orders differ between realization and root system")
    if delta is None:
        delta = discriminant(L)
    dpoly = delta.poly if isinstance(delta, InvariantPolynomial) else delta
    restricted = dpoly.restrict_to(L.cartan_coords)
    pi2 = pi * pi
    if not restricted:
        raise ConsistencyError("discriminant vanishes on the Cartan subalgebra")
    lead_e, lead_c = pi2.sorted_terms()[0]
    ratio = restricted.coefficient(lead_e) / lead_c
    if not ratio or restricted != pi2 * ratio:
        raise ConsistencyError("Delta|h is not a constant multiple of pi^2")
    for idx in simple_root_indices(L):
        if pi.compose(reflection_images(L, idx)) != -pi:
            raise ConsistencyError(f"reflection in {L.basis[idx]} does not send pi to -pi")
    return pi, ratio


def chevalley_restrict(L: LieAlgebraRealization, Q) -> MultiPoly:
    """Restriction of an invariant polynomial to the Cartan subalgebra; checked Weyl-invariant."""
    poly = Q.poly if isinstance(Q, InvariantPolynomial) else Q
    if poly.variables != L.coords:
        raise InputError("polynomial is not over the coordinates of this realization")
    if not is_invariant(L, poly):
        raise InputError("polynomial is not annihilated by every tau(A)")
    restricted = poly.restrict_to(L.cartan_coords)
    for g in cartan_weyl_group(L):
        if _act(L, g, restricted) != restricted:
            raise ConsistencyError("restriction is not Weyl-invariant")
    return restricted


def hc_euler_shift(L: LieAlgebraRealization, delta: InvariantPolynomial | None = None) -> Fraction:
    """(n - l)/2; cross-checked against deg(Delta)/2 when the discriminant is supplied."""
    shift = Fraction(L.n - L.rank, 2)
    if delta is not None and Fraction(delta.degree, 2) != shift:
        raise ConsistencyError("deg(Delta)/2 differs from (n - l)/2")
    return shift
