from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lietame.errors import InputError
from lietame.orbits import (
    Partition,
    alt_square,
    clebsch_gordan,
    enumerate_orbits,
    make_orbit,
    orbit_codim,
    partitions,
    product_orbits,
    sym_square,
    transversal_weights,
)
from lietame.rootsys import build_root_system, weyl_degrees

from oracles import centralizer_dim

TYPES = ["A1", "A2", "A3", "A4", "B2", "C2", "B3", "C3", "D4"]

# orbit counts; type D very even partitions listed once (D4 has 12 orbits, 10 partitions)
COUNTS = {"A1": 2, "A2": 3, "A3": 5, "A4": 7, "B2": 4, "C2": 4, "B3": 7, "C3": 8, "D4": 10}


@pytest.mark.parametrize("label", TYPES)
def test_orbit_counts(label):
    assert len(enumerate_orbits(label)) == COUNTS[label]


@pytest.mark.parametrize("label", TYPES)
def test_codim_matches_centralizer_formula(label):
    letter = label[0]
    for o in enumerate_orbits(label):
        assert o.codim == centralizer_dim(letter, o.partition.parts)
        assert orbit_codim(o) == o.codim


@pytest.mark.parametrize("label", TYPES)
def test_weight_bookkeeping(label):
    for o in enumerate_orbits(label):
        assert sum(x + 1 for x in o.sl2_weights) == o.dim_algebra
        m, total = transversal_weights(o)
        assert total == Fraction(o.dim_algebra + o.codim, 2)
        assert len(m) == o.codim


@pytest.mark.parametrize("label", TYPES)
def test_regular_orbit_weights_are_twice_exponents(label):
    regular = enumerate_orbits(label)[0]
    degs = weyl_degrees(build_root_system(label))
    assert sorted(regular.sl2_weights) == sorted(2 * (d - 1) for d in degs)
    assert regular.codim == len(degs)


def test_sl3_orbit_data():
    o3, o21, o111 = enumerate_orbits("A2")
    assert o3.sl2_weights == (4, 2)
    assert o21.sl2_weights == (2, 1, 1, 0)
    assert o111.sl2_weights == (0,) * 8
    assert [o.codim for o in (o3, o21, o111)] == [2, 4, 8]


def test_zero_orbit_is_whole_algebra():
    for label in TYPES:
        zero = enumerate_orbits(label)[-1]
        assert zero.is_zero()
        assert zero.codim == zero.dim_algebra
        m, total = transversal_weights(zero)
        assert set(m.m) == {1} and total == zero.dim_algebra


def test_b2_and_c2_agree():
    b = sorted(o.codim for o in enumerate_orbits("B2"))
    c = sorted(o.codim for o in enumerate_orbits("C2"))
    assert b == c == [2, 4, 6, 10]


def test_product_orbits():
    orbs = product_orbits("A1xA1")
    assert len(orbs) == 4
    assert sorted(o.codim for o in orbs) == [2, 4, 4, 6]
    o = make_orbit("A2xA1", [(3,), (1, 1)])
    assert o.sl2_weights == (4, 2, 0, 0, 0)


def test_make_orbit_rejects_bad_input():
    with pytest.raises(InputError):
        make_orbit("C2", [(3, 1)])  # odd parts must pair in type C
    with pytest.raises(InputError):
        make_orbit("B2", [(2, 2)])  # wrong size
    with pytest.raises(InputError):
        make_orbit("A1xA1", [(2,)])
    with pytest.raises(InputError):
        Partition.parse("2,x")


@given(st.integers(0, 12), st.integers(0, 12))
def test_clebsch_gordan_dimensions(a, b):
    assert sum(c + 1 for c in clebsch_gordan(a, b)) == (a + 1) * (b + 1)


@given(st.integers(0, 15))
def test_square_dimensions(a):
    d = a + 1
    assert sum(c + 1 for c in alt_square(a)) == d * (d - 1) // 2
    assert sum(c + 1 for c in sym_square(a)) == d * (d + 1) // 2


@given(st.integers(1, 12).flatmap(lambda n: st.sampled_from(list(partitions(n)))))
def test_transpose_is_involution(parts):
    p = Partition(parts)
    assert p.transpose().transpose() == p
    assert p.transpose().size == p.size
