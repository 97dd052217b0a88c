import cmath
import math
import pytest

from cohomotopy.errors import NonConvergent, UnsupportedRing
from cohomotopy.matrix import Matrix, SLMatrix, elementary_assemble, identity
from cohomotopy.random_instances import InstanceConfig, random_factors
from cohomotopy.rings import PolyRing, QuotientMap
from cohomotopy.squares import builtin_square, circle_power_map, circle_ring
from cohomotopy.winding import tau, winding, winding_coordinates, winding_number

S1 = circle_ring()
PLANE = PolyRing(("X", "Y"))


def _eval(p, x, y):
    total = 0.0
    for mono, c in p.items():
        term = float(c)
        for v, e in mono:
            term *= (x if v == "X" else y) ** e
        total += term
    return total


def oracle(m, n=4096):
    """Dense-sampling count: sum of arguments of z(t_{k+1}) / z(t_k)."""
    a, c = m.rows[0][0].value, m.rows[1][0].value
    zs = []
    for k in range(n + 1):
        t = 2 * math.pi * k / n
        x, y = math.cos(t), math.sin(t)
        zs.append(complex(_eval(a, x, y), _eval(c, x, y)))
    turns = sum(cmath.phase(z1 / z0) for z0, z1 in zip(zs, zs[1:])) / (2 * math.pi)
    return round(turns)


def power(m, k):
    out = identity(m.ring)
    for _ in range(k):
        out = out @ m
    return out


def test_identity_and_tau():
    assert winding(identity(S1)) == 0
    r = winding_number(tau())
    assert r.value == -1 == oracle(tau())
    assert r.residual < 1e-6


@pytest.mark.parametrize("k", range(1, 6))
def test_tau_powers(k):
    r = winding_number(power(tau(), k))
    assert r.value == k * winding(tau()) == oracle(power(tau(), k))
    assert r.residual < 1e-6


def test_inverse_winds_backwards():
    assert winding(tau().inverse()) == 1


def test_homomorphism(rng):
    cfg = InstanceConfig(max_factors=3, max_degree=2)
    for _ in range(10):
        a = elementary_assemble(random_factors(rng, S1, ("X", "Y"), cfg), 2, S1) @ power(tau(), rng.randint(0, 2))
        b = power(tau(), rng.randint(0, 3)) @ elementary_assemble(random_factors(rng, S1, ("X", "Y"), cfg), 2, S1)
        assert winding(a @ b) == winding(a) + winding(b)


def test_matches_oracle(rng):
    for _ in range(4):
        m = elementary_assemble(random_factors(rng, S1, ("X", "Y")), 2, S1) @ power(tau(), rng.randint(0, 3))
        assert winding(m) == oracle(m)


def test_vanishes_on_plane_images(rng):
    nu = QuotientMap(PLANE, S1)
    for _ in range(10):
        m = elementary_assemble(random_factors(rng, PLANE, ("X", "Y")), 2, PLANE)
        assert winding(m.apply(nu)) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_power_maps_scale(n):
    assert winding(tau().apply(circle_power_map(n))) == n * winding(tau())


def test_interval_mode():
    sq = builtin_square("circle")
    R = sq.right
    # constant first column (1, 0); a column not closing up at X = 0, 1 is rejected
    m = SLMatrix(R, [[1, "X - X^2"], [0, 1]])
    assert winding_number(m, mode="interval-B", var="X").value == 0
    with pytest.raises(UnsupportedRing):
        winding_number(SLMatrix(R, [[1, 0], ["X", 1]]), mode="interval-B", var="X")


def test_rejects_other_rings():
    with pytest.raises(UnsupportedRing):
        winding_number(identity(PLANE))


def test_nonconvergent_when_column_vanishes():
    # first column (X - 1, Y) vanishes at t = 0: no winding number
    bad = Matrix(S1, [["X - 1", 0], ["Y", 0]])
    with pytest.raises(NonConvergent):
        winding_number(bad)


def test_coordinates():
    d = builtin_square("torus").common
    m = SLMatrix.from_components(d, [tau(), power(tau(), 2).inverse()])
    assert winding_coordinates(m) == (1, -2)
