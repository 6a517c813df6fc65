from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from lietame.errors import InputError, ResourceError
from lietame.rootsys import (
    are_conjugate,
    build_root_system,
    closed_symmetric_subsets,
    is_closed_symmetric,
    parse_type_label,
    root_permutations,
    subsystem_type,
    weyl_degrees,
    weyl_group,
)

from oracles import closed_subset_classes_bruteforce, roots_from_cartan

# (type, |Phi+|, |W|, degrees); standard tables
TABLE = [
    ("A1", 1, 2, [2]),
    ("A2", 3, 6, [2, 3]),
    ("A3", 6, 24, [2, 3, 4]),
    ("B2", 4, 8, [2, 4]),
    ("C2", 4, 8, [2, 4]),
    ("G2", 6, 12, [2, 6]),
    ("B3", 9, 48, [2, 4, 6]),
    ("C3", 9, 48, [2, 4, 6]),
    ("D4", 12, 192, [2, 4, 4, 6]),
    ("A1xA1", 2, 4, [2, 2]),
    ("A2xA1", 4, 12, [2, 2, 3]),
]


@pytest.mark.parametrize("label,npos,order,degs", TABLE)
def test_root_system_tables(label, npos, order, degs):
    rs = build_root_system(label)
    assert len(rs.positive) == npos
    assert len(rs.roots) == 2 * npos
    assert rs.n == rs.rank + 2 * npos
    W = weyl_group(rs)
    assert W.order == order
    d = weyl_degrees(rs)
    assert d == degs
    assert sum(d) * 2 == rs.n + rs.rank
    assert prod(d) == order


@pytest.mark.parametrize("label", [t[0] for t in TABLE])
def test_poincare_polynomial_factors(label):
    rs = build_root_system(label)
    coeffs = [1]
    for d in weyl_degrees(rs):
        block = [1] * d
        coeffs = [sum(coeffs[i] * block[k - i] for i in range(len(coeffs)) if 0 <= k - i < d) for k in range(len(coeffs) + d - 1)]
    assert weyl_group(rs).poincare_coefficients() == coeffs


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2", "A3", "C3"])
def test_roots_match_reflection_closure_of_cartan(label):
    rs = build_root_system(label)
    roots, _ = roots_from_cartan(rs.cartan_matrix)
    assert sorted(roots) == sorted(rs.roots)


def test_cartan_matrices():
    assert build_root_system("A2").cartan_matrix == ((2, -1), (-1, 2))
    for label in ["B2", "C2", "G2", "B3", "D4"]:
        C = build_root_system(label).cartan_matrix
        l = len(C)
        assert all(C[i][i] == 2 for i in range(l))
        assert all((C[i][j] == 0) == (C[j][i] == 0) for i in range(l) for j in range(l))
    C = build_root_system("G2").cartan_matrix
    assert C[0][1] * C[1][0] == 3


def test_positive_roots_are_simple_coordinates():
    rs = build_root_system("B3")
    for i in rs.positive:
        assert all(c >= 0 for c in rs.roots[i])
    assert max(sum(rs.roots[i]) for i in rs.positive) == 5  # Coxeter number 6 minus 1


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "C2", "G2", "A1xA1", "A3", "B3"])
def test_closed_subsets_match_bruteforce(label):
    rs = build_root_system(label)
    reps = closed_symmetric_subsets(rs)
    oracle = closed_subset_classes_bruteforce(rs.cartan_matrix)
    assert len(reps) == len(oracle)
    for P in reps:
        vecs = frozenset(rs.roots[i] for i in P.members)
        assert sum(1 for cls in oracle if vecs in cls) == 1


@pytest.mark.parametrize("label,count", [("A1", 2), ("A2", 3), ("B2", 5), ("G2", 6), ("A3", 5), ("B3", 10)])
def test_closed_subset_class_counts(label, count):
    assert len(closed_symmetric_subsets(build_root_system(label))) == count


def test_subsystem_types():
    rs = build_root_system("B2")
    types = [subsystem_type(rs, P) for P in closed_symmetric_subsets(rs)]
    assert types == [("0", 0, 0), ("A1", 3, 1), ("A1", 3, 1), ("A1xA1", 6, 2), ("B2", 10, 2)]
    rs = build_root_system("G2")
    labels = sorted(subsystem_type(rs, P)[0] for P in closed_symmetric_subsets(rs))
    assert labels == ["0", "A1", "A1", "A1xA1", "A2", "G2"]
    rs = build_root_system("A3")
    labels = sorted(subsystem_type(rs, P)[0] for P in closed_symmetric_subsets(rs))
    assert labels == ["0", "A1", "A1xA1", "A2", "A3"]


def test_representatives_are_canonical_and_pairwise_nonconjugate():
    rs = build_root_system("A3")
    reps = closed_symmetric_subsets(rs)
    perms = root_permutations(rs, weyl_group(rs))
    for i, a in enumerate(reps):
        orbit = {tuple(sorted(p[k] for k in a.members)) for p in perms}
        assert a.sorted_members == min(orbit)
        for b in reps[i + 1:]:
            assert not are_conjugate(rs, a.members, b.members, perms)


@given(st.sampled_from(["A2", "B2", "G2", "A3"]), st.data())
@settings(max_examples=40, deadline=None)
def test_closure_is_weyl_invariant(label, data):
    rs = build_root_system(label)
    perms = root_permutations(rs, weyl_group(rs))
    pos = list(rs.positive)
    chosen = data.draw(st.lists(st.sampled_from(pos), unique=True))
    members = set(chosen) | {rs.negation[i] for i in chosen}
    w = data.draw(st.sampled_from(perms))
    assert is_closed_symmetric(rs, members) == is_closed_symmetric(rs, {w[i] for i in members})


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D3", "E6", "", "A2x", "sl3"])
def test_bad_labels(bad):
    with pytest.raises(InputError):
        parse_type_label(bad)


def test_guards():
    rs = build_root_system("D4")
    with pytest.raises(ResourceError):
        weyl_group(rs, max_order=100)
    with pytest.raises(ResourceError):
        closed_symmetric_subsets(rs, max_pairs=6)
