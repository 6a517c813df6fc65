"""Root systems in simple-root coordinates, their Weyl groups, primitive degrees,
and closed symmetric root subsets up to Weyl conjugacy.

All vectors are integer tuples of simple-root coefficients, so every group
action below is an exact integer matrix action.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import ConsistencyError, InputError, ResourceError

DEFAULT_MAX_WEYL_ORDER = 10**5
DEFAULT_MAX_PAIRS = 12

_FACTOR_RE = re.compile(r"^([A-DG])(\d+)$")


def parse_type_label(label: str) -> list[tuple[str, int]]:
    """Split ``"A2xA1"`` into ``[("A", 2), ("A", 1)]``; validate each factor."""
    if not isinstance(label, str) or not label.strip():
        raise InputError("empty type label")
    factors = []
    for part in label.strip().split("x"):
        m = _FACTOR_RE.match(part.strip())
        if not m:
            raise InputError(f"unknown type symbol {part!r} in {label!r}")
        letter, rank = m.group(1), int(m.group(2))
        minimum = {"A": 1, "B": 2, "C": 2, "D": 4, "G": 2}[letter]
        if rank < minimum or (letter == "G" and rank != 2):
            raise InputError(f"type {letter}{rank} is not supported")
        factors.append((letter, rank))
    return factors


def _gram(letter: str, l: int) -> list[list[int]]:
    """Inner products of simple roots (squared lengths 1, 2, 4 or 6 as appropriate)."""
    B = [[0] * l for _ in range(l)]
    for i in range(l):
        B[i][i] = 2
    for i in range(l - 1):
        B[i][i + 1] = B[i + 1][i] = -1
    if letter == "B":
        B[l - 1][l - 1] = 1
    elif letter == "C":
        B[l - 1][l - 1] = 4
        B[l - 2][l - 1] = B[l - 1][l - 2] = -2
    elif letter == "D":
        # alpha_l = e_{l-1} + e_l hangs off alpha_{l-2}
        B[l - 2][l - 1] = B[l - 1][l - 2] = 0
        B[l - 3][l - 1] = B[l - 1][l - 3] = -1
    elif letter == "G":
        B = [[2, -3], [-3, 6]]
    return B


def cartan_from_gram(B: Sequence[Sequence[int]]) -> list[list[int]]:
    """a_ij = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)."""
    l = len(B)
    A = [[0] * l for _ in range(l)]
    for i in range(l):
        for j in range(l):
            q = Fraction(2 * B[i][j], B[i][i])
            if q.denominator != 1:
                raise ConsistencyError("non-integral Cartan entry")
            A[i][j] = int(q)
    return A


def standard_cartan(letter: str, rank: int) -> list[list[int]]:
    return cartan_from_gram(_gram(letter, rank))


def _block_diag(blocks):
    size = sum(len(b) for b in blocks)
    M = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                M[off + i][off + j] = v
        off += len(b)
    return M


def _height(v):
    return sum(v)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    roots: tuple  # integer tuples in the simple-root basis; positives first
    cartan_matrix: tuple
    gram: tuple = field(repr=False)

    @property
    def n(self) -> int:
        """Dimension of the semisimple algebra this system models."""
        return len(self.roots) + self.rank

    @cached_property
    def index(self) -> dict:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def positive(self) -> tuple:
        return tuple(i for i, r in enumerate(self.roots) if is_positive(r))

    @cached_property
    def negation(self) -> tuple:
        return tuple(self.index[tuple(-c for c in r)] for r in self.roots)

    def inner(self, u, v) -> int:
        B = self.gram
        return sum(u[i] * B[i][j] * v[j] for i in range(self.rank) for j in range(self.rank) if u[i] and v[j])

    def reflect(self, i: int, v):
        """Simple reflection s_i: v - <v, alpha_i^vee> alpha_i."""
        A = self.cartan_matrix
        pairing = sum(A[i][j] * v[j] for j in range(self.rank))
        return tuple(c - pairing if k == i else c for k, c in enumerate(v))

    @cached_property
    def simple_reflection_matrices(self) -> tuple:
        mats = []
        l = self.rank
        for i in range(l):
            cols = [self.reflect(i, tuple(1 if k == j else 0 for k in range(l))) for j in range(l)]
            mats.append(tuple(tuple(cols[j][r] for j in range(l)) for r in range(l)))
        return tuple(mats)


def is_positive(v) -> bool:
    """Positive iff the first nonzero coordinate is positive."""
    for c in v:
        if c:
            return c > 0
    return False


def build_root_system(type_label: str) -> RootSystem:
    """Close the simple roots under simple reflections."""
    factors = parse_type_label(type_label)
    gram = _block_diag([_gram(letter, r) for letter, r in factors])
    cartan = cartan_from_gram(gram)
    l = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(l)) for i in range(l)]

    def reflect(i, v):
        pairing = sum(cartan[i][j] * v[j] for j in range(l))
        return tuple(c - pairing if k == i else c for k, c in enumerate(v))

    seen = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(l):
            w = reflect(i, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    pos = sorted((r for r in seen if is_positive(r)), key=lambda r: (_height(r), tuple(-c for c in r)))
    neg = [tuple(-c for c in r) for r in pos]
    if len(pos) + len(neg) != len(seen):
        raise ConsistencyError("root set not closed under negation")
    label = "x".join(f"{a}{r}" for a, r in factors)
    return RootSystem(
        type_label=label,
        rank=l,
        roots=tuple(pos + neg),
        cartan_matrix=tuple(tuple(r) for r in cartan),
        gram=tuple(tuple(r) for r in gram),
    )


# Weyl group


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


@dataclass(frozen=True)
class WeylGroup:
    """Explicitly enumerated Weyl group acting on simple-root coordinates."""

    elements: tuple  # integer matrices, identity first, BFS order
    lengths: tuple  # Coxeter length of each element
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def poincare_coefficients(self) -> list[int]:
        """Coefficients of sum_w t^{l(w)}, lowest degree first."""
        coeffs = [0] * (max(self.lengths) + 1)
        for k in self.lengths:
            coeffs[k] += 1
        return coeffs


def weyl_group(rs: RootSystem, max_order: int | None = None) -> WeylGroup:
    """Breadth-first enumeration in the Cayley graph of the simple reflections.

    BFS depth is the Coxeter length.
    """
    limit = DEFAULT_MAX_WEYL_ORDER if max_order is None else max_order
    gens = rs.simple_reflection_matrices
    l = rs.rank
    ident = tuple(tuple(1 if i == j else 0 for j in range(l)) for i in range(l))
    elements = [ident]
    lengths = [0]
    seen = {ident}
    frontier = [ident]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for g in frontier:
            for s in gens:
                h = _matmul(s, g)
                if h not in seen:
                    seen.add(h)
                    elements.append(h)
                    lengths.append(depth)
                    nxt.append(h)
                    if len(elements) > limit:
                        raise ResourceError(
                            f"Weyl group of {rs.type_label} exceeds order guard {limit}"
                        )
        frontier = nxt
    return WeylGroup(tuple(elements), tuple(lengths), gens)


def root_permutations(rs: RootSystem, W: WeylGroup) -> list[tuple]:
    """For each group element, the induced permutation of root indices."""
    idx = rs.index
    perms = []
    for g in W.elements:
        try:
            perms.append(tuple(idx[_apply(g, r)] for r in rs.roots))
        except KeyError:
            raise ConsistencyError("Weyl group element does not permute the roots") from None
    return perms


def _divide_by_one_minus_tk(q: list[int], d: int) -> list[int]:
    # q = (1 - t^d) * out, exact over Z
    q = list(q)
    out = [0] * (len(q) - d)
    for i in range(len(out)):
        out[i] = q[i]
        q[i] -= out[i]
        q[i + d] += out[i]
    if any(q):
        raise ConsistencyError("Poincare polynomial does not factor into (1-t^d) pieces")
    return out


def weyl_degrees(rs: RootSystem, max_order: int | None = None) -> list[int]:
    """Primitive degrees from the factorization sum t^l(w) = prod (t^d - 1)/(t - 1)."""
    W = weyl_group(rs, max_order)
    p = W.poincare_coefficients()
    # multiply by (1-t)^l, then peel off (1 - t^d) factors smallest d first
    q = p
    for _ in range(rs.rank):
        q = [a - b for a, b in zip(q + [0], [0] + q)]
    degrees = []
    while True:
        while q and q[-1] == 0:
            q.pop()
        if q == [1]:
            break
        if not q or q[0] != 1:
            raise ConsistencyError(f"Poincare factorization failed for {rs.type_label}")
        d = next(k for k in range(1, len(q)) if q[k])
        if q[d] >= 0:
            raise ConsistencyError(f"Poincare factorization failed for {rs.type_label}")
        q = _divide_by_one_minus_tk(q, d)
        degrees.append(d)
        if len(degrees) > rs.rank:
            break
    degrees.sort()
    if len(degrees) != rs.rank:
        raise ConsistencyError(f"found {len(degrees)} degrees for rank {rs.rank}")
    prod = 1
    for d in degrees:
        prod *= d
    if 2 * sum(degrees) != rs.n + rs.rank or prod != W.order:
        raise ConsistencyError(f"degrees {degrees} fail sum/product checks for {rs.type_label}")
    return degrees


# closed symmetric subsets


@dataclass(frozen=True)
class RootSubset:
    parent: RootSystem = field(repr=False, compare=False, hash=False)
    members: frozenset

    def __len__(self):
        return len(self.members)

    @property
    def sorted_members(self) -> tuple:
        return tuple(sorted(self.members))

    def roots(self) -> list:
        return [self.parent.roots[i] for i in self.sorted_members]

    def key(self):
        return (self.parent.type_label, self.sorted_members)


def is_closed_symmetric(rs: RootSystem, members) -> bool:
    members = set(members)
    if any(rs.negation[i] not in members for i in members):
        return False
    idx = rs.index
    for i, j in itertools.combinations_with_replacement(sorted(members), 2):
        s = tuple(a + b for a, b in zip(rs.roots[i], rs.roots[j]))
        k = idx.get(s)
        if k is not None and k not in members:
            return False
    return True


def closed_symmetric_subsets(
    rs: RootSystem, max_pairs: int | None = None, max_order: int | None = None
) -> list[RootSubset]:
    """One representative per Weyl-conjugacy class of closed symmetric subsets.

    The representative is the lexicographically least sorted index tuple in its
    orbit; the list is sorted by (size, members).
    """
    limit = DEFAULT_MAX_PAIRS if max_pairs is None else max_pairs
    pos = rs.positive
    if len(pos) > limit:
        raise ResourceError(
            f"{rs.type_label} has {len(pos)} positive roots; subset enumeration guard is {limit}"
        )
    perms = root_permutations(rs, weyl_group(rs, max_order))
    neg = rs.negation
    reps = set()
    seen = set()
    for mask in range(1 << len(pos)):
        chosen = [pos[i] for i in range(len(pos)) if mask >> i & 1]
        members = frozenset(chosen + [neg[i] for i in chosen])
        if members in seen or not is_closed_symmetric(rs, members):
            continue
        orbit = {frozenset(p[i] for i in members) for p in perms}
        seen |= orbit
        reps.add(min(tuple(sorted(o)) for o in orbit))
    out = [RootSubset(rs, frozenset(r)) for r in reps]
    out.sort(key=lambda s: (len(s), s.sorted_members))
    return out


def are_conjugate(rs: RootSystem, a, b, perms=None) -> bool:
    if perms is None:
        perms = root_permutations(rs, weyl_group(rs))
    a, b = frozenset(a), frozenset(b)
    return any(frozenset(p[i] for i in a) == b for p in perms)


# subsystem recognition


def _rank_of(vectors) -> int:
    rows = [[Fraction(c) for c in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def simple_system(rs: RootSystem, members) -> list[int]:
    """Indecomposable positive members: the simple roots of the subsystem."""
    members = set(members)
    pos = [i for i in members if is_positive(rs.roots[i])]
    sums = set()
    for i, j in itertools.combinations_with_replacement(pos, 2):
        sums.add(tuple(a + b for a, b in zip(rs.roots[i], rs.roots[j])))
    return sorted(i for i in pos if rs.roots[i] not in sums)


def _isomorphic(A, B) -> bool:
    n = len(A)
    if n != len(B):
        return False

    def extend(perm):
        k = len(perm)
        if k == n:
            return True
        for cand in range(n):
            if cand in perm:
                continue
            if B[cand][cand] != A[k][k]:
                continue
            if all(A[k][i] == B[cand][perm[i]] and A[i][k] == B[perm[i]][cand] for i in range(k)):
                if extend(perm + [cand]):
                    return True
        return False

    return extend([])


def _identify_component(C) -> str:
    r = len(C)
    candidates = [("A", r)]
    if r >= 2:
        candidates.append(("B", r))
    if r >= 3:
        candidates.append(("C", r))
    if r >= 4:
        candidates.append(("D", r))
    if r == 2:
        candidates.append(("G", 2))
    for letter, rank in candidates:
        if _isomorphic(C, standard_cartan(letter, rank)):
            return f"{letter}{rank}"
    raise ConsistencyError(f"unrecognized Cartan matrix {C}")


def subsystem_components(rs: RootSystem, P: RootSubset) -> list[tuple[str, frozenset]]:
    """Irreducible components of the subsystem P as (type label, root index set)."""
    simple = simple_system(rs, P.members)
    if not simple:
        return []
    k = len(simple)
    # connectivity graph on simple roots
    adj = {i: set() for i in range(k)}
    for a in range(k):
        for b in range(a + 1, k):
            if rs.inner(rs.roots[simple[a]], rs.roots[simple[b]]):
                adj[a].add(b)
                adj[b].add(a)
    comps = []
    unseen = set(range(k))
    while unseen:
        start = min(unseen)
        stack, comp = [start], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        unseen -= comp
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        vecs = [rs.roots[simple[a]] for a in comp]
        C = [
            [2 * rs.inner(u, v) // rs.inner(u, u) for v in vecs]
            for u in vecs
        ]
        label = _identify_component(C)
        # members of P in the span of this component: those orthogonal to every other simple root
        other = [rs.roots[simple[a]] for a in range(k) if a not in comp]
        roots = frozenset(
            i for i in P.members if all(rs.inner(rs.roots[i], o) == 0 for o in other)
        )
        out.append((label, roots))
    out.sort(key=lambda t: (-int(t[0][1:]), t[0][0], sorted(t[1])))
    return out


def subsystem_type(rs: RootSystem, P: RootSubset) -> tuple[str, int, int]:
    """(type label of q_P, m = dim q_P, k = rank q_P)."""
    if not P.members:
        return ("0", 0, 0)
    k = _rank_of([rs.roots[i] for i in P.members])
    m = len(P.members) + k
    comps = subsystem_components(rs, P)
    if sum(int(lbl[1:]) for lbl, _ in comps) != k:
        raise ConsistencyError("simple system size differs from span rank")
    if len(P.members) == len(rs.roots):
        return (rs.type_label, m, k)
    return ("x".join(lbl for lbl, _ in comps), m, k)
