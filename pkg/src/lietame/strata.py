"""Stratification of a classical Lie algebra by (P-class, nilpotent orbit of q_P)
and the quasi-b-function attached to each stratum.

A stratum is indexed by a closed symmetric subset P (up to the Weyl group) and
a nilpotent orbit O of the semisimple algebra q_P. Two pairs (P, O) and
(P, O') give the same stratum when an element of the Weyl group stabilizing P
carries O to O' (this permutes isomorphic simple factors of q_P), so orbits
are taken up to that action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .bfunction import BFunction
from .errors import ConsistencyError, InputError
from .orbits import NilpotentOrbit, enumerate_orbits, orbit_codim, transversal_weights
from .rootsys import (
    RootSubset,
    build_root_system,
    closed_symmetric_subsets,
    parse_type_label,
    root_permutations,
    subsystem_components,
    subsystem_type,
    weyl_degrees,
    weyl_group,
)
from .weights import WeightVector


@dataclass(frozen=True)
class Stratum:
    ambient_type: str
    P_class: RootSubset
    qP_type: str
    m: int
    k: int
    orbit: NilpotentOrbit | None
    codim_in_g: int
    weights: WeightVector
    conic: bool = True
    n: int = field(default=0, compare=False)

    @property
    def is_open(self) -> bool:
        return self.orbit is None

    @property
    def is_full(self) -> bool:
        """P is the whole root system (the stratum passes through the origin)."""
        return bool(self.P_class.members) and len(self.P_class.members) == len(self.P_class.parent.roots)

    @property
    def label(self) -> str:
        if self.orbit is None:
            return "open"
        return f"{self.qP_type}[{self.orbit.label()}]"

    def __str__(self):
        return f"{self.ambient_type}:{self.label}"


def _check_classical(ambient_type: str):
    factors = parse_type_label(ambient_type)
    bad = [f"{a}{r}" for a, r in factors if a not in "ABCD"]
    if bad:
        raise InputError(f"strata need a classical ambient type, got exceptional factor {bad[0]}")


def _stabilizer_actions(perms, P: RootSubset, comps):
    """Permutations of the components of P induced by Weyl elements stabilizing P."""
    roots_of = [c for _, c in comps]
    actions = set()
    for p in perms:
        if frozenset(p[i] for i in P.members) != P.members:
            continue
        images = []
        for c in roots_of:
            img = frozenset(p[i] for i in c)
            try:
                images.append(roots_of.index(img))
            except ValueError:
                raise ConsistencyError("Weyl element does not permute the components of P") from None
        actions.add(tuple(images))
    return actions


def _orbit_classes(comps, actions):
    per_factor = [enumerate_orbits(lbl) for lbl, _ in comps]
    seen = set()
    out = []
    for combo in itertools.product(*per_factor):
        parts = tuple(o.partition for o in combo)
        variants = []
        for act in actions:
            moved = [None] * len(parts)
            for src, dst in enumerate(act):
                moved[dst] = parts[src]
            variants.append(tuple(moved))
        canon = min(variants)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out


def enumerate_strata(ambient_type: str, max_pairs: int | None = None, max_order: int | None = None) -> list[Stratum]:
    """All strata, sorted by codimension and then label."""
    _check_classical(ambient_type)
    rs = build_root_system(ambient_type)
    n = rs.n
    perms = root_permutations(rs, weyl_group(rs, max_order))
    out = []
    for P in closed_symmetric_subsets(rs, max_pairs, max_order):
        qtype, m, k = subsystem_type(rs, P)
        if not P.members:
            out.append(Stratum(rs.type_label, P, qtype, 0, 0, None, 0, WeightVector(()), n=n))
            continue
        comps = subsystem_components(rs, P)
        algebra = "x".join(lbl for lbl, _ in comps)
        for parts in _orbit_classes(comps, _stabilizer_actions(perms, P, comps)):
            orbit = NilpotentOrbit(algebra, parts)
            if orbit.dim_algebra != m:
                raise ConsistencyError(f"dim q_P mismatch for {algebra}")
            r = orbit_codim(orbit)
            dim_stratum = (n - m) + orbit.dim_orbit
            if n - dim_stratum != r:
                raise ConsistencyError(f"codimension count fails for {algebra}[{orbit.label()}]")
            weights, total = transversal_weights(orbit)
            if total != Fraction(m + r, 2):
                raise ConsistencyError("stratum weight total differs from (m + r)/2")
            out.append(Stratum(rs.type_label, P, qtype, m, k, orbit, r, weights, n=n))
    out.sort(key=lambda s: (s.codim_in_g, s.label))
    return out


def stratum_bfunction(s: Stratum, N: int = 0) -> BFunction:
    """Quasi-b-function along a stratum: roots N, ..., 0, ..., -(m-k)/2, total weight (m+r)/2.

    The open stratum gets the constant polynomial.
    """
    if N < 0 or int(N) != N:
        raise InputError(f"upper root N must be a nonnegative integer, got {N}")
    N = int(N)
    if s.is_open:
        return BFunction((), Fraction(0), "regular", "open stratum: no vanishing condition")
    low = (s.m - s.k) // 2
    if 2 * low != s.m - s.k:
        raise ConsistencyError("m - k is odd")
    roots = tuple(range(N, -low - 1, -1))
    total = s.weights.total
    kind = "monodromic" if s.is_full and N == 0 else "regular"
    note = (
        f"phi: slice coordinates transversal to {s.label} in q_P and to q_P in g; "
        f"m' = lambda/2 + 1 on the slice, weights {_fmt_weights(s.weights)}"
    )
    return BFunction(roots, total, kind, note)


def _fmt_weights(w: WeightVector) -> str:
    return "(" + ",".join(str(x) for x in w.m) + ")"


def euler_origin_total_weight(ambient_type: str) -> Fraction:
    """(n + l)/2, checked against the sum of the primitive degrees."""
    rs = build_root_system(ambient_type)
    total = Fraction(rs.n + rs.rank, 2)
    if sum(weyl_degrees(rs)) != total:
        raise ConsistencyError("sum of degrees differs from (n + l)/2")
    return total


@dataclass(frozen=True)
class TameRow:
    stratum: Stratum
    b: BFunction
    tame: bool
    margin: Fraction | None
    conic: bool


@dataclass(frozen=True)
class TamenessReport:
    ambient_type: str
    N: int
    rows: tuple

    @property
    def verdict(self) -> bool:
        return all(r.tame for r in self.rows)


def tameness_report(ambient_type: str, N: int = 0, max_pairs: int | None = None, max_order: int | None = None) -> TamenessReport:
    rows = []
    for s in enumerate_strata(ambient_type, max_pairs, max_order):
        b = stratum_bfunction(s, N)
        if not s.is_open:
            expected = Fraction(s.k + s.codim_in_g, 2)
            if b.margin != expected:
                raise ConsistencyError(f"margin of {s} is {b.margin}, expected (k+r)/2 = {expected}")
            if s.is_full and s.orbit.codim == s.k:
                # regular orbit of the whole algebra: origin data of the Euler field
                if b.total_weight != euler_origin_total_weight(ambient_type):
                    raise ConsistencyError("regular full stratum does not reproduce the origin weight")
        rows.append(TameRow(s, b, b.tame, b.margin, s.conic))
    return TamenessReport(build_root_system(ambient_type).type_label, N, tuple(rows))


def codim1_usual_bfunction(ambient_type: str) -> list[Fraction]:
    """Roots of the codimension-one b-function divided by its single slice weight."""
    strata = [s for s in enumerate_strata(ambient_type) if s.codim_in_g == 1]
    if not strata:
        raise ConsistencyError(f"{ambient_type} has no codimension-one stratum")
    s = strata[0]
    if len(s.weights) != 1:
        raise ConsistencyError("codimension-one stratum has more than one slice weight")
    b = stratum_bfunction(s, 0).rescaled(s.weights.m[0])
    roots = list(b.roots)
    for r in roots:
        if (2 * r).denominator != 1 or r < Fraction(-1, 2):
            raise ConsistencyError(f"codim-1 root {r} is not a half-integer >= -1/2")
    return roots
