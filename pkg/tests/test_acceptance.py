"""Acceptance gate: ten exact criteria, each under a wall-clock budget.

A summary line per criterion is printed at the end of the pytest run.
"""

import itertools
import random
import time
from fractions import Fraction
from math import comb, prod

import pytest

from lietame.exactalg import MultiPoly, PolyMatrix, charpoly
from lietame.liealg import apply_field, discriminant, pi_square_check, realize, tau_field
from lietame.orbits import enumerate_orbits, transversal_weights
from lietame.rootsys import build_root_system, closed_symmetric_subsets, weyl_degrees, weyl_group
from lietame.strata import codim1_usual_bfunction, enumerate_strata, stratum_bfunction, tameness_report
from lietame.weylalg import (
    WeylOp,
    euler_power_identity,
    membership_threshold,
    multinomial_slice_sum,
    normal_product,
)

from oracles import (
    charpoly_by_cofactors,
    closed_subset_classes_bruteforce,
    groebner_socle_degree,
    random_homogeneous,
)


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


@pytest.mark.criterion(1, "Euler power identity is the zero operator, n <= 3, N <= 5")
def test_criterion_01_euler_power_identity():
    with Budget(10):
        for n in range(1, 4):
            for N in range(1, 6):
                diff = euler_power_identity(n, N)
                assert diff.terms == {}, (n, N)


@pytest.mark.criterion(2, "multinomial slice sums equal C(|beta|, N), |beta| <= 8")
def test_criterion_02_slice_sums():
    with Budget(1):
        checked = 0
        for n in range(1, 4):
            for beta in itertools.product(range(9), repeat=n):
                M = sum(beta)
                if M > 8:
                    continue
                for N in range(M + 1):
                    assert multinomial_slice_sum(beta, N) == comb(M, N)
                    checked += 1
        assert checked > 0


def _xi(n):
    return tuple(f"xi{i + 1}" for i in range(n))


@pytest.mark.criterion(3, "membership threshold is sum(deg) - n (monomial and random regular sequences)")
def test_criterion_03_threshold():
    with Budget(60):
        for n in (2, 3):
            names = _xi(n)
            for exps in itertools.product(range(1, 5), repeat=n):
                p = [MultiPoly.monomial(names, tuple(e if j == i else 0 for j in range(n))) for i, e in enumerate(exps)]
                assert membership_threshold(p) == sum(exps) - n
        rng = random.Random(20240611)
        found = 0
        while found < 20:
            n = 2 if found % 2 == 0 else 3
            names = _xi(n)
            degs = [rng.randint(1, 3) for _ in range(n)]
            p = [random_homogeneous(rng, names, d) for d in degs]
            if any(q.is_zero() for q in p):
                continue
            socle = groebner_socle_degree(p, names)
            if socle is None:  # zero set larger than the origin
                continue
            assert membership_threshold(p) == sum(degs) - n == socle
            found += 1


@pytest.mark.criterion(4, "primitive degrees for A1, A2, A3, B2, G2 with sum and product checks")
def test_criterion_04_degrees():
    expected = {"A1": [2], "A2": [2, 3], "A3": [2, 3, 4], "B2": [2, 4], "G2": [2, 6]}
    with Budget(30):
        for label, degs in expected.items():
            rs = build_root_system(label)
            d = weyl_degrees(rs)
            assert d == degs
            assert Fraction(sum(d)) == Fraction(rs.n + rs.rank, 2)
            assert prod(d) == weyl_group(rs).order


@pytest.mark.criterion(5, "sl2-weight bookkeeping for every orbit of A1..A3, B2, C2")
def test_criterion_05_weights():
    with Budget(5):
        for label in ("A1", "A2", "A3", "B2", "C2"):
            for o in enumerate_orbits(label):
                assert sum(x + 1 for x in o.sl2_weights) == o.dim_algebra
                _, total = transversal_weights(o)
                assert total == Fraction(o.dim_algebra + o.codim, 2)


@pytest.mark.criterion(6, "sl3 has 6 strata with codimensions {0,1,2,3,4,8}")
def test_criterion_06_sl3_strata():
    with Budget(5):
        s = enumerate_strata("A2")
        assert len(s) == 6
        assert sorted(x.codim_in_g for x in s) == [0, 1, 2, 3, 4, 8]


@pytest.mark.criterion(7, "every stratum of A1, A2, A3, B2 tame with margin (k+r)/2; sl3 origin data")
def test_criterion_07_tameness():
    with Budget(10):
        for label in ("A1", "A2", "A3", "B2"):
            rep = tameness_report(label, 0)
            assert rep.verdict
            for row in rep.rows:
                assert row.tame
                s = row.stratum
                if not s.is_open:
                    assert row.margin == Fraction(s.k + s.codim_in_g, 2)
        strata = {x.label: x for x in enumerate_strata("A2")}
        # the stratum through the origin that carries the Euler-field data (P = Phi, regular orbit)
        b = stratum_bfunction(strata["A2[3]"], 0)
        assert b.roots == (0, -1, -2, -3)
        assert b.total_weight == 5
        # the zero orbit at the origin: same roots, total weight 8, margin 5
        b0 = stratum_bfunction(strata["A2[1,1,1]"], 0)
        assert b0.roots == (0, -1, -2, -3) and b0.total_weight == 8 and b0.margin == 5


@pytest.mark.criterion(8, "codim-1 b-function in the usual normalization is {0, -1/2}")
def test_criterion_08_codim1():
    with Budget(1):
        for label in ("A1", "A2", "A3", "B2", "C2", "A1xA1"):
            roots = codim1_usual_bfunction(label)
            assert roots == [0, Fraction(-1, 2)]
            assert all(r >= Fraction(-1, 2) for r in roots)


@pytest.mark.criterion(9, "discriminant suite for sl2 and sl3")
def test_criterion_09_discriminant():
    with Budget(120):
        for label in ("A1", "A2"):
            L = realize(label)
            d = discriminant(L)  # checks lambda_0..lambda_{l-1} vanish identically
            assert d.degree == L.n - L.rank and d.poly.is_homogeneous()
            for a in range(L.n):
                assert apply_field(tau_field(L, a), d.poly).is_zero()
            pi, ratio = pi_square_check(L, build_root_system(label), d)
            assert ratio != 0
            assert d.poly.restrict_to(L.cartan_coords) == pi * pi * ratio


def _random_weylop(rng, variables):
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(1, 3)):
        a = tuple(rng.randint(0, 2) for _ in range(n))
        b = tuple(rng.randint(0, 2) for _ in range(n))
        terms[(a, b)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return WeylOp(variables, terms)


@pytest.mark.criterion(10, "oracle equivalences: subsets, charpoly, associativity")
def test_criterion_10_oracles():
    with Budget(60):
        for label in ("A1", "A2", "B2", "C2", "G2", "A1xA1"):
            rs = build_root_system(label)
            reps = closed_symmetric_subsets(rs)
            oracle = closed_subset_classes_bruteforce(rs.cartan_matrix)
            assert len(reps) == len(oracle)
            assert {next(c for c in oracle if frozenset(rs.roots[i] for i in P.members) in c) for P in reps} == oracle
        rng = random.Random(7)
        names = ("u", "v")
        for size in range(1, 5):
            for _ in range(5):
                rows = [
                    [MultiPoly(names, {(rng.randint(0, 1), rng.randint(0, 1)): rng.randint(-3, 3)}) for _ in range(size)]
                    for _ in range(size)
                ]
                assert charpoly(PolyMatrix(rows)) == charpoly_by_cofactors(rows, names)
        variables = WeylOp.coordinates(2)
        for _ in range(100):
            a, b, c = (_random_weylop(rng, variables) for _ in range(3))
            assert normal_product(normal_product(a, b), c) == normal_product(a, normal_product(b, c))
