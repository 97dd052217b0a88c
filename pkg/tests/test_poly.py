from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohomotopy.errors import PolySyntaxError, UnknownVariable
from cohomotopy.poly import Poly, format_poly, parse_poly, poly_arith

V = ("X", "Y", "T", "S")


def P(text, vars=V):
    return parse_poly(text, vars)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monos = st.tuples(*(st.integers(0, 2) for _ in V))


@st.composite
def polys(draw):
    terms = draw(st.lists(st.tuples(monos, coeffs), max_size=5))
    return Poly({tuple(zip(V, m)): c for m, c in terms}, V)


def test_arith_examples():
    assert poly_arith(P("X+Y"), P("X-Y"), "mul") == P("X^2 - Y^2")
    p = P("3*X*Y - 1/2")
    assert poly_arith(p, Poly.const(0, V), "add") == p
    assert P("2/3*X") * P("3/2*Y") == P("X*Y")


def test_substitute_examples():
    t, x = P("T"), P("X")
    assert P("T^2").substitute({"T": (1 - x) * t}, partial=True) == P("(1-X)^2*T^2")
    assert P("T").substitute({"T": 0}) == 0
    assert P("T*S").substitute({"T": x, "S": 1 - x}, partial=True) == P("X - X^2")


def test_evaluate_examples():
    assert P("X^2 + Y^2 - 1").evaluate({"X": Fraction(3, 5), "Y": Fraction(4, 5)}) == 0
    p = P("3*X^2*Y - 7*Y + 5")
    assert p.evaluate({"X": 0, "Y": 0}) == p.constant_term() == 5
    assert P("(X - 1)*X").evaluate({"X": Fraction(1, 2)}) == Fraction(-1, 4)


def test_divmod_examples():
    d = P("X^2 + Y^2 - 1")
    assert P("X^2").divmod(d, "X") == (Poly.const(1), P("1 - Y^2"))
    assert P("X^3").divmod(d, "X") == (P("X"), P("X - X*Y^2"))
    p = P("Y^3 + 2")
    assert p.divmod(d, "X") == (Poly.const(0), p)


def test_parse_examples():
    p = P("3/2*X^2*Y - 1")
    assert p.terms == {(("X", 2), ("Y", 1)): Fraction(3, 2), (): Fraction(-1)}
    assert format_poly(P("X^2+Y^2-1")) == "X^2 + Y^2 - 1"
    assert P("(X+1)^3") == P("X^3 + 3*X^2 + 3*X + 1")


@pytest.mark.parametrize("bad", ["X^", "3*/X", "(X+1", "X^-1", ""])
def test_parse_errors(bad):
    with pytest.raises(PolySyntaxError):
        P(bad)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_poly("Z + 1", ("X",))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(polys())
def test_format_parse_round_trip(p):
    assert P(format_poly(p)) == p


@given(polys(), polys())
def test_substitution_is_a_homomorphism(a, b):
    img = {"X": P("T - 1"), "Y": P("S*T"), "T": P("2"), "S": P("X")}
    sub = lambda q: q.substitute(img)
    assert sub(a * b) == sub(a) * sub(b)
    assert sub(a + b) == sub(a) + sub(b)


@given(polys())
def test_divmod_identity(p):
    d = P("X^2 + Y^2 - 1")
    q, r = p.divmod(d, "X")
    assert q * d + r == p
    assert r.degree("X") < 2
