import json

import pytest

from cohomotopy.errors import InputError
from cohomotopy.matrix import ElemFactor, SLMatrix, elementary_assemble
from cohomotopy.poly import Poly, parse_poly
from cohomotopy.rings import DirectSum, PolyRing
from cohomotopy.serialize import (
    factors_from_doc,
    factors_to_doc,
    load_json,
    matrix_from_doc,
    matrix_to_doc,
    parse_ring_spec,
    ring_from_doc,
    ring_to_doc,
)
from cohomotopy.squares import builtin_square, circle_ring
from cohomotopy.winding import tau


@pytest.mark.parametrize("text", ["Q", "Q[Y]", "Q[X,T]", "S1", "S1[T]", "klein", "swan(3)", "torus[S]", "circle"])
def test_ring_strings_round_trip(text):
    ring = parse_ring_spec(text)
    assert ring_from_doc(json.loads(json.dumps(ring_to_doc(ring)))) == ring


def test_sum_ring_doc():
    d = DirectSum((circle_ring(), PolyRing(("Y",))))
    assert ring_from_doc(ring_to_doc(d)) == d


@pytest.mark.parametrize("bad", ["Q[", "nonsense", "swan(x)", "swan(0)"])
def test_bad_ring_strings(bad):
    with pytest.raises(InputError):
        parse_ring_spec(bad)


def test_matrix_round_trip():
    sq = builtin_square("circle")
    R = sq.right
    m = elementary_assemble([ElemFactor(1, 2, R.coerce(parse_poly("X*(1-X)", ("X",))))], 2, R)
    pair = SLMatrix.from_components(sq, [m, m.subs(sq.left, {"X": Poly.const(0)})])
    for mat, ring in ((tau(), circle_ring()), (m, R), (pair, sq)):
        assert matrix_from_doc(json.loads(json.dumps(matrix_to_doc(mat))), ring) == mat


def test_factor_round_trip():
    r = PolyRing(("Y",))
    fs = [ElemFactor(1, 2, r.coerce(parse_poly("3/2*Y^2", ("Y",)))), ElemFactor(2, 1, r.coerce(-1))]
    assert factors_from_doc(factors_to_doc(fs), r) == fs


def test_bad_matrix_docs():
    with pytest.raises(InputError):
        matrix_from_doc("not a matrix", circle_ring())
    with pytest.raises(InputError):
        matrix_from_doc([[1, 0], [0, 1.5]], circle_ring())


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError):
        load_json(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InputError):
        load_json(p)
