from collections import Counter
from fractions import Fraction

import pytest

from lietame.errors import InputError
from lietame.strata import (
    codim1_usual_bfunction,
    enumerate_strata,
    euler_origin_total_weight,
    stratum_bfunction,
    tameness_report,
)

from oracles import multiset_partition_count, stratum_count_bruteforce_typeA

AMBIENT = ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "A1xA1", "A2xA1"]


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_type_a_counts_match_partition_multisets(l):
    n = len(enumerate_strata(f"A{l}"))
    assert n == multiset_partition_count(l + 1) == stratum_count_bruteforce_typeA(l)


def test_small_counts():
    assert [len(enumerate_strata(t)) for t in ("A1", "A2", "A3", "B2")] == [3, 6, 14, 12]


def test_a1_strata():
    s = enumerate_strata("A1")
    assert [x.codim_in_g for x in s] == [0, 1, 3]
    origin = s[-1]
    assert origin.qP_type == "A1" and origin.orbit.label() == "1,1" and origin.codim_in_g == 3


def test_a2_strata():
    s = enumerate_strata("A2")
    assert Counter(x.codim_in_g for x in s) == Counter([0, 1, 2, 3, 4, 8])
    labels = {x.label for x in s}
    assert labels == {"open", "A1[2]", "A1[1,1]", "A2[3]", "A2[2,1]", "A2[1,1,1]"}


@pytest.mark.parametrize("label", AMBIENT)
def test_stratum_invariants(label):
    for s in enumerate_strata(label):
        assert s.conic
        if s.is_open:
            assert s.codim_in_g == 0 and len(s.weights) == 0
            continue
        r = s.codim_in_g
        assert r == s.orbit.codim
        assert s.weights.total == Fraction(s.m + r, 2)
        # dimension count of the stratum
        assert s.n - ((s.n - s.m) + s.orbit.dim_orbit) == r


@pytest.mark.parametrize("label", AMBIENT)
def test_margin_is_exactly_k_plus_r_over_two(label):
    rep = tameness_report(label)
    assert rep.verdict
    for row in rep.rows:
        s = row.stratum
        if s.is_open:
            assert row.tame and row.margin is None
        else:
            assert row.margin == Fraction(s.k + s.codim_in_g, 2)
            assert row.b.min_root == -Fraction(s.m - s.k, 2)


@pytest.mark.parametrize("N", [0, 1, 3])
def test_upper_root_parameter(N):
    for s in enumerate_strata("A2"):
        b = stratum_bfunction(s, N)
        if s.is_open:
            assert b.roots == ()
            continue
        assert b.roots[0] == N
        assert b.degree == N + 1 + (s.m - s.k) // 2
        assert b.tame


def test_paper_instances():
    s = {x.label: x for x in enumerate_strata("A2")}
    b = stratum_bfunction(s["A2[3]"])
    assert b.roots == (0, -1, -2, -3) and b.total_weight == 5
    assert b.kind == "monodromic"
    b = stratum_bfunction(s["A1[2]"])
    assert b.roots == (0, -1) and b.total_weight == 2
    b = stratum_bfunction(s["A2[1,1,1]"])
    assert b.total_weight == 8 and b.margin == 5
    assert stratum_bfunction(s["open"]).roots == ()


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "C3"])
def test_regular_full_stratum_reproduces_origin_weight(label):
    from lietame.rootsys import build_root_system, weyl_degrees

    full = [s for s in enumerate_strata(label) if s.is_full and s.codim_in_g == s.k]
    assert len(full) == 1
    total = stratum_bfunction(full[0]).total_weight
    assert total == euler_origin_total_weight(label) == sum(weyl_degrees(build_root_system(label)))


@pytest.mark.parametrize("label", AMBIENT)
def test_codim1_usual_normalization(label):
    assert codim1_usual_bfunction(label) == [0, Fraction(-1, 2)]


def test_exceptional_ambient_rejected():
    with pytest.raises(InputError):
        enumerate_strata("G2")
    with pytest.raises(InputError):
        stratum_bfunction(enumerate_strata("A1")[1], -1)


def test_sorted_by_codim_then_label():
    s = enumerate_strata("B2")
    keys = [(x.codim_in_g, x.label) for x in s]
    assert keys == sorted(keys)
