from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lietame.errors import InputError, ResourceError, StructuralError
from lietame.exactalg import MultiPoly, PolyMatrix, charpoly, max_dim_guard, poly_arith

from oracles import charpoly_by_cofactors, cofactor_det

V = ("x", "y", "z")

exps3 = st.tuples(*[st.integers(0, 3)] * 3)
coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(exps3, coeff, max_size=5).map(lambda d: MultiPoly(V, d))


def test_constant_folding_and_zero():
    x, y, z = MultiPoly.gens(V)
    p = x * y - y * x
    assert p.is_zero() and p.degree == -1
    assert (x + 1) * (x - 1) == x**2 - 1
    assert MultiPoly.constant(V, 3) == 3


def test_printing_is_graded_lex():
    x, y, z = MultiPoly.gens(V)
    p = z + x**2 + Fraction(1, 2) * x * y - 7
    assert str(p) == "x^2 + 1/2*x*y + z - 7"


def test_mismatched_variables_rejected():
    a = MultiPoly.variable(("x",), "x")
    b = MultiPoly.variable(("y",), "y")
    with pytest.raises(StructuralError):
        a + b
    with pytest.raises(StructuralError):
        poly_arith(a, b, "mul")


def test_poly_arith_ops():
    x, y, _ = MultiPoly.gens(V)
    assert poly_arith(x, y, "add") == x + y
    assert poly_arith(x, y, "sub") == x - y
    assert poly_arith(x, y, "mul") == x * y
    with pytest.raises(InputError):
        poly_arith(x, y, "div")


def test_homogeneity_and_parts():
    x, y, z = MultiPoly.gens(V)
    p = x**2 * y + z**3 + x
    assert not p.is_homogeneous()
    assert p.homogeneous_part(3) == x**2 * y + z**3
    assert (x * y - z**2).is_homogeneous()


def test_restrict_and_evaluate():
    x, y, z = MultiPoly.gens(V)
    p = x**2 + y * z + 3 * x * z
    r = p.restrict_to(("x",))
    assert r.variables == ("x",)
    assert r == MultiPoly.variable(("x",), "x") ** 2
    assert p.evaluate({"x": 1, "y": 2, "z": Fraction(1, 2)}) == Fraction(1 + 1 + Fraction(3, 2))


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_leibniz(a, b):
    for v in V:
        assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


@given(polys, polys, st.tuples(coeff, coeff, coeff))
@settings(max_examples=40, deadline=None)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@given(polys, polys)
@settings(max_examples=30, deadline=None)
def test_compose_then_evaluate(a, b):
    x, y, z = MultiPoly.gens(V)
    images = [b, x + y, z * 2]
    pt = (Fraction(1, 3), Fraction(-2), Fraction(5, 2))
    inner = tuple(im.evaluate(pt) for im in images)
    assert a.compose(images).evaluate(pt) == a.evaluate(inner)


def test_charpoly_matches_cofactor_symbolic():
    x, y, z = MultiPoly.gens(V)
    M = PolyMatrix([[x, y, 1], [z, x + y, 2 * z], [y * z, 0 * x + 3, x - z]])
    assert charpoly(M) == charpoly_by_cofactors([list(r) for r in M.entries], V)


small_int = st.integers(-4, 4)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_charpoly_matches_cofactor_numeric(rows):
    M = PolyMatrix.from_scalars(rows)
    got = charpoly(M)
    want = charpoly_by_cofactors(rows, ())
    assert got == want
    n = len(rows)
    det = cofactor_det([[Fraction(v) for v in r] for r in rows])
    assert got[-1].constant_term() == (-1) ** n * det
    assert got[1].constant_term() == -sum(rows[i][i] for i in range(n))


def test_charpoly_guard(monkeypatch):
    M = PolyMatrix.from_scalars([[0] * 5 for _ in range(5)])
    with pytest.raises(ResourceError):
        charpoly(M, max_dim=4)
    monkeypatch.setenv("LIETAME_MAX_DIM", "3")
    assert max_dim_guard() == 3
    with pytest.raises(ResourceError):
        charpoly(M)
    monkeypatch.setenv("LIETAME_MAX_DIM", "many")
    with pytest.raises(InputError):
        max_dim_guard()


def test_sl2_adjoint_charpoly_by_hand():
    # ad of xH + yX + zY on the basis (H, X, Y): det(T - ad) = T^3 - 4(x^2 + yz) T
    x, y, z = MultiPoly.gens(V)
    zero = MultiPoly.zero(V)
    ad = PolyMatrix([[zero, -z, y], [-2 * y, 2 * x, zero], [2 * z, zero, -2 * x]])
    c = charpoly(ad)
    assert c[0] == 1 and c[1] == 0 and c[3] == 0
    assert c[2] == -4 * (x**2 + y * z)
