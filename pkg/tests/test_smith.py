import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohomotopy.smith import group_label, invariant_factors, obstruction_group, smith_normal_form
from cohomotopy.squares import builtin_square


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))


def determinantal_factors(m):
    """d_k = gcd of k x k minors; invariant factors are d_k / d_(k-1)."""
    rows, cols = len(m), len(m[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[m[i][j] for j in cs] for i in rs]))
        if g == 0:
            out += [0] * (min(rows, cols) - len(out))
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def test_examples():
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal == (1, 1)
    assert smith_normal_form([[1, 1], [1, -1]]).diagonal == (1, 2)
    assert smith_normal_form([[1, 1], [1, 1]]).diagonal == (1, 0)
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == (2, 6, 12)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_against_determinantal_oracle(m):
    sf = smith_normal_form(m)
    d = sf.diagonal
    assert d == determinantal_factors(m)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(x >= 0 for x in d)
    diag = _matmul(_matmul([list(r) for r in sf.left], m), [list(r) for r in sf.right])
    for i, row in enumerate(diag):
        for j, x in enumerate(row):
            assert x == (d[i] if i == j else 0)
    assert abs(_det([list(r) for r in sf.left])) == 1
    assert abs(_det([list(r) for r in sf.right])) == 1
    if len(m) == len(m[0]):
        assert math.prod(d) == abs(_det(m))


def test_labels():
    assert group_label((1, 2)) == "Z_2"
    assert group_label((1, 0)) == "Z"
    assert group_label((0, 0)) == "Z^2"
    assert group_label((1, 1)) == "0"
    assert group_label((2, 6, 0)) == "Z_2 + Z_6 + Z"
    assert invariant_factors([], 2) == (0, 0)


@pytest.mark.parametrize(
    "name,n,label",
    [
        ("klein", None, "Z_2"),
        ("torus", None, "Z"),
        ("cylinder", None, "0"),
        ("circle", None, "0"),
        ("projective", None, "Z_2"),
        ("sphere", None, "Z"),
        ("swan", 3, "Z_3"),
        ("swan", 1, "0"),
    ],
)
def test_square_obstructions(name, n, label):
    assert obstruction_group(builtin_square(name, n)).label == label


def test_klein_generators():
    g = obstruction_group(builtin_square("klein"))
    assert set(g.generators) == {(1, 1), (1, -1)}
    assert g.invariant_factors == (1, 2)


def test_explicit_generators():
    assert obstruction_group(generators=[(1, 1)]).label == "Z"
    assert obstruction_group(generators=[(1, 1), (1, -1)]).label == "Z_2"
