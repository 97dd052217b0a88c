import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohomotopy.errors import NotAUnit, NotSL, ShapeError, UnsupportedRing
from cohomotopy.matrix import (
    ElemFactor,
    Matrix,
    SLMatrix,
    elementary,
    elementary_assemble,
    embed_sl2_in_sl3,
    extract_block,
    identity,
    mat_det,
    sl2_factor_euclidean,
    sl_inverse,
    whitehead_diag,
)
from cohomotopy.poly import parse_poly
from cohomotopy.random_instances import InstanceConfig, random_factors
from cohomotopy.rings import PolyRing
from cohomotopy.squares import circle_ring
from cohomotopy.winding import tau

Q = PolyRing(())
QY = PolyRing(("Y",))
S1 = circle_ring()


def qy(text):
    return QY.coerce(parse_poly(text, ("Y",)))


def test_mul_examples(rng):
    a = elementary_assemble(random_factors(rng, QY, ("Y",)), 2, QY)
    assert a @ identity(QY) == a
    assert elementary(QY, 2, 1, 2, qy("Y")) @ elementary(QY, 2, 1, 2, qy("Y^2")) == elementary(QY, 2, 1, 2, qy("Y + Y^2"))


def test_mul_against_schoolbook(rng):
    for _ in range(10):
        a = elementary_assemble(random_factors(rng, QY, ("Y",)), 2, QY)
        b = elementary_assemble(random_factors(rng, QY, ("Y",)), 2, QY)
        ab = a @ b
        for i in range(2):
            for j in range(2):
                assert ab[i, j] == sum((a[i, k] * b[k, j] for k in range(2)), QY.zero())


def test_det_examples():
    assert mat_det(identity(Q, 3)) == 1
    assert mat_det(elementary(QY, 3, 2, 3, qy("Y^3"))) == 1
    assert mat_det(tau()) == 1  # X^2 + Y^2 reduces to 1


def test_inverse_examples():
    assert sl_inverse(identity(QY)) == identity(QY)
    e = elementary(QY, 2, 2, 1, qy("Y - 4"))
    assert sl_inverse(e) == elementary(QY, 2, 2, 1, qy("4 - Y"))
    x, y = S1.var("X"), S1.var("Y")
    assert sl_inverse(tau()) == SLMatrix(S1, [[x, -y], [y, x]])


def test_not_sl():
    with pytest.raises(NotSL):
        SLMatrix(Q, [[2, 0], [0, 1]])


def test_assemble_examples():
    assert elementary_assemble([], 2, QY) == identity(QY)
    f = qy("3*Y^2 - 1")
    assert elementary_assemble([ElemFactor(1, 2, f)], 2, QY) == SLMatrix(QY, [[1, f], [0, 1]])


def test_factor_examples():
    f = qy("Y^3 + 1/2")
    assert sl2_factor_euclidean(SLMatrix(QY, [[1, f], [0, 1]])) == [ElemFactor(1, 2, f)]
    w = SLMatrix(Q, [[0, 1], [-1, 0]])
    # both the listed factorization and ours multiply back to w
    listed = [ElemFactor(2, 1, Q.coerce(-1)), ElemFactor(1, 2, Q.coerce(1)), ElemFactor(2, 1, Q.coerce(-1))]
    assert elementary_assemble(listed, 2, Q) == w
    assert elementary_assemble(sl2_factor_euclidean(w), 2, Q) == w


def test_factor_rejects_circle():
    with pytest.raises(UnsupportedRing):
        sl2_factor_euclidean(tau())
    with pytest.raises(UnsupportedRing):
        sl2_factor_euclidean(identity(PolyRing(("X", "Y"))))


@pytest.mark.parametrize("u", [1, 2, -1, Fraction(-3, 7)])
def test_whitehead(u):
    prod = elementary_assemble(whitehead_diag(Q.coerce(u)), 2, Q)
    assert prod == SLMatrix(Q, [[u, 0], [0, Fraction(1) / u]])


def test_whitehead_needs_unit():
    with pytest.raises(NotAUnit):
        whitehead_diag(qy("Y"))


def test_embed_and_extract():
    assert embed_sl2_in_sl3(identity(QY)) == identity(QY, 3)
    lam = elementary_assemble([ElemFactor(2, 1, qy("Y")), ElemFactor(1, 2, qy("1 - Y^2"))], 2, QY)
    top = (qy("Y"), qy("2"))
    m = embed_sl2_in_sl3(lam, top)
    assert mat_det(m) == 1
    assert extract_block(m) == (lam, top)
    with pytest.raises(ShapeError):
        extract_block(Matrix(QY, [[1, 0, 0], [1, 1, 0], [0, 0, 1]]))


@given(st.integers(0, 10**6))
def test_euclidean_round_trip(seed):
    r = random.Random(seed)
    cfg = InstanceConfig(max_factors=6, max_degree=4)
    m = elementary_assemble(random_factors(r, QY, ("Y",), cfg), 2, QY)
    if r.random() < 0.3:  # non-elementary start: scale by diag(u, 1/u)
        u = Fraction(r.choice([-3, -2, 2, 5]), r.choice([1, 3]))
        m = SLMatrix(QY, [[u, 0], [0, 1 / u]]) @ m
    assert elementary_assemble(sl2_factor_euclidean(m), 2, QY) == m


@given(st.integers(0, 10**6))
def test_inverse_is_two_sided(seed):
    r = random.Random(seed)
    m = elementary_assemble(random_factors(r, S1, ("X", "Y")), 2, S1)
    assert (m @ m.inverse()).is_identity() and (m.inverse() @ m).is_identity()
