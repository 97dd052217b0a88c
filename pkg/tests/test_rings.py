from fractions import Fraction

import pytest

from cohomotopy.errors import GlueMismatch, NotSurjective, RingMismatch
from cohomotopy.poly import Poly, parse_poly
from cohomotopy.rings import (
    DirectSum,
    Evaluation,
    PolyRing,
    Substitution,
    elem_equal,
    fibre_make,
    hom_apply,
    hom_preimage,
    hom_respects_relation,
    identity_hom,
)
from cohomotopy.squares import builtin_square, check_square, circle_power_map, circle_ring, klein_reflection


S1 = circle_ring()


def c(text):
    return S1.coerce(parse_poly(text, ("X", "Y")))


def test_normal_form():
    assert c("X^2") == c("1 - Y^2")
    assert c("X^2 + Y^2 - 1").is_zero()
    assert c("X^3*Y").value == parse_poly("X*Y - X*Y^3", ("X", "Y"))


def test_element_equality():
    assert elem_equal(c("X^2"), c("1 - Y^2"))
    q = PolyRing(())
    assert not elem_equal(q.coerce(1), q.coerce(2))
    sq = builtin_square("circle")
    a = sq.make(sq.right.coerce(parse_poly("X^2 - X + 5", ("X",))), sq.left.coerce(5))
    b = sq.make(sq.right.coerce(parse_poly("X^2 - X + 5", ("X",))), sq.left.coerce(5))
    assert a == b


def test_hom_examples():
    sq = builtin_square("circle")
    delta = sq.f
    img = hom_apply(delta, sq.right.coerce(parse_poly("X^2", ("X",))))
    assert img.components == (sq.left.coerce(0).value, sq.left.coerce(1).value)
    a = sq.left.coerce(7)
    assert hom_apply(sq.g, a).components == (a.value, a.value)
    assert hom_apply(klein_reflection(), c("Y*X")) == c("-Y*X")


def test_relation_checks():
    assert hom_respects_relation(circle_power_map(2))
    assert hom_respects_relation(identity_hom(S1))
    bad = Substitution(S1, S1, {"X": Poly.var("X", ("X", "Y")), "Y": Poly.var("X", ("X", "Y"))})
    assert not hom_respects_relation(bad)


def test_preimages():
    nu = builtin_square("sphere").f
    lift = hom_preimage(nu, c("X*Y"))
    assert lift.value == parse_poly("X*Y", ("X", "Y"))
    delta = builtin_square("circle").f
    d = delta.target.coerce((0, 1))
    assert hom_preimage(delta, d).value == Poly.var("X")
    assert hom_preimage(delta, delta.target.coerce((3, 3))).value == 3
    with pytest.raises(NotSurjective):
        hom_preimage(circle_power_map(3), c("X"))


def test_fibre_make():
    sq = builtin_square("circle")
    X = parse_poly("X", ("X",))
    fibre_make(sq, sq.right.coerce(X * X - X + 5), sq.left.coerce(5))
    with pytest.raises(GlueMismatch):
        fibre_make(sq, sq.right.coerce(X), sq.left.coerce(0))


def test_klein_fibre():
    sq = builtin_square("klein")
    # p(T) with p(0) = Y and p(1) = -Y: linear interpolation
    p = parse_poly("Y - 2*T*Y", ("X", "Y", "T"))
    fibre_make(sq, sq.right.coerce(p), sq.left.coerce(parse_poly("Y", ("X", "Y"))))
    with pytest.raises(GlueMismatch):
        fibre_make(sq, sq.right.coerce(parse_poly("Y", ("X", "Y", "T"))), sq.left.coerce(parse_poly("Y", ("X", "Y"))))


def test_builtin_power_maps():
    x, y = Poly.var("X", ("X", "Y")), Poly.var("Y", ("X", "Y"))
    mu1 = builtin_square("swan", 1).g
    assert mu1.apply(c("X")) == c("X") and mu1.apply(c("Y")) == c("Y")
    mu2 = builtin_square("swan", 2).g
    assert mu2.apply(c("X")) == S1.coerce(x * x - y * y)
    assert mu2.apply(c("Y")) == S1.coerce(2 * x * y)
    mu3 = builtin_square("swan", 3).g
    assert mu3.apply(c("X")) == S1.coerce(x**3 - 3 * x * y * y)
    assert mu3.apply(c("Y")) == S1.coerce(3 * x * x * y - y**3)


@pytest.mark.parametrize("name", ["circle", "sphere", "cylinder", "torus", "klein", "projective", "swan"])
def test_builtin_squares_respect_relations(name):
    assert check_square(builtin_square(name, 3 if name == "swan" else None))


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        c("X") + PolyRing(("X",)).coerce(Poly.var("X"))


def test_extend_and_direct_sum():
    d = DirectSum((S1, S1))
    e = d.extend("T")
    assert e.all_vars() == ("X", "Y", "T")
    ev = Evaluation(PolyRing(("X",)), DirectSum((PolyRing(()), PolyRing(()))), ({"X": 0}, {"X": Fraction(1)}), surjective=True)
    assert hom_apply(ev, ev.source.coerce(Poly.var("X") + 2)).components == (Poly.const(2), Poly.const(3))
