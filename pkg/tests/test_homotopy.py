import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohomotopy import homotopy as H
from cohomotopy import pipelines as P
from cohomotopy.errors import (
    AssumptionUnmet,
    BoundaryMismatch,
    GlueMismatch,
    NotACompletion,
    NotALoop,
    RingMismatch,
    UnsupportedRing,
)
from cohomotopy.matrix import ElemFactor, SLMatrix, elementary_assemble, identity, sl2_factor_euclidean
from cohomotopy.poly import Poly, parse_poly
from cohomotopy.random_instances import random_factors
from cohomotopy.rings import PolyRing
from cohomotopy.squares import builtin_square

Q = PolyRing(())
QT = Q.extend("T")
CIRCLE = builtin_square("circle")
CYL = builtin_square("cylinder")


def e12(ring, text):
    return SLMatrix(ring, [[1, parse_poly(text, ring.all_vars())], [0, 1]])


def e21(ring, text):
    return SLMatrix(ring, [[1, 0], [parse_poly(text, ring.all_vars()), 1]])


# -- loops, homotopies, paths --------------------------------------------


def test_loop_examples():
    H.loop_check(identity(QT), Q)
    H.loop_check(e12(QT, "T*(1-T)"), Q)
    with pytest.raises(NotALoop):
        H.loop_check(e12(QT, "T"), Q)


def test_loop_ring_mismatch():
    with pytest.raises(RingMismatch):
        H.loop_check(identity(PolyRing(("S",))), Q, "T")


def test_homotopy_constant():
    a = H.loop_check(e21(QT, "3*T - 3*T^2"), Q)
    H.constant_homotopy(a)


def test_homotopy_wrong_end():
    a = H.loop_check(e21(QT, "T - T^2"), Q)
    b = H.loop_check(e21(QT, "2*T - 2*T^2"), Q)
    gamma = H._lift(a.matrix, Q.extend("T", "S"))
    with pytest.raises(BoundaryMismatch) as exc:
        H.homotopy_check(gamma, a, b)
    assert exc.value.condition == "gamma(T,1) = second loop"


def test_reparametrized_contraction_misses_an_end():
    # alpha(T(1-S)) is I at S = 1 and at T = 0, but gamma(1,S) = alpha(1-S) is not I
    a = H.loop_check(e12(QT, "T - T^2"), Q)
    ring = Q.extend("T", "S")
    t, s = Poly.var("T"), Poly.var("S")
    gamma = H._at(a.matrix, ring, T=t * (1 - s))
    with pytest.raises(BoundaryMismatch) as exc:
        H.homotopy_check(gamma, a, H.constant_loop(Q))
    assert exc.value.condition == "gamma(1,S) = I"


def test_scaling_contraction():
    fs = [ElemFactor(1, 2, QT.coerce(parse_poly("T - T^2", ("T",)))), ElemFactor(2, 1, QT.coerce(parse_poly("5*T^2 - 5*T^3", ("T",))))]
    h = H.contraction_homotopy(fs, Q)
    assert h.ends[0].matrix.is_identity()


def test_path_examples():
    p = H.path_from_factors([], Q)
    assert p.matrix.is_identity()
    p = H.path_from_factors([ElemFactor(1, 2, Q.coerce(5))], Q)
    assert p.matrix == e12(QT, "5*T")
    w = SLMatrix(Q, [[0, 1], [-1, 0]])
    p = H.path_from_factors(sl2_factor_euclidean(w), Q)
    assert H._at(p.matrix, Q, T=1) == w
    with pytest.raises(BoundaryMismatch):
        H.path_check(p.matrix, identity(Q))


def test_gamma_row_product():
    R = PolyRing(("Y",))
    y = R.var("Y")
    one, zero = R.one(), R.zero()
    c, d = y, 1 - y
    tau = SLMatrix(R, [[c, -1], [d, 1]])  # det = c + d = 1
    assert H.gamma_row_product((one, zero), identity(R), (c, d), tau) == (c, d)
    a, b = 1 + y, -y
    sigma = SLMatrix(R, [[a, -1], [b, 1]])
    assert H.gamma_row_product((a, b), sigma, (one, zero), identity(R)) == (a, b)
    # symbolic: first column of sigma tau is (ac + de, bc + df) with (e, f) sigma's second column
    e, f = sigma[0, 1], sigma[1, 1]
    assert H.gamma_row_product((a, b), sigma, (c, d), tau) == (a * c + e * d, b * c + f * d)
    with pytest.raises(NotACompletion):
        H.gamma_row_product((c, d), sigma, (c, d), tau)


# -- chi ------------------------------------------------------------------


def _loops(seed, base, vars=()):
    return P.synth_loop_pair(random.Random(seed), base, vars)


def test_chi_trivial():
    i = H.constant_loop(Q)
    res = H.chi_map(i, i, CIRCLE)
    assert res.image.rep.is_identity()


def test_chi_one_sided():
    a, b = _loops(3, Q)
    i = H.constant_loop(Q)
    R = CIRCLE.right
    x = Poly.var("X")
    res = H.chi_map(a, i, CIRCLE)
    right, left = res.image.rep.components()
    assert right == H._at(a.matrix, R, T=1 - x) and left.is_identity()
    res = H.chi_map(i, b, CIRCLE)
    assert res.image.rep.components()[0] == H._at(b.matrix, R, T=x)


def test_chi_rejects_wrong_certificate():
    a, b = _loops(5, Q)
    M = H.chi_map(a, b, CIRCLE).companion
    with pytest.raises(BoundaryMismatch):
        H.chi_map(a, b, CIRCLE, certificate=M.inverse())


def test_chi_kernel_from_diagonal_pair():
    a, _ = _loops(7, Q)
    h = H.constant_homotopy(a)
    theta = H.chi_kernel_certificate(h, CIRCLE)
    w = H.chi_kernel_witness(a, a, theta, CIRCLE)
    assert w.ends[0].matrix == a.matrix


def test_chi_kernel_trivial_theta():
    i = H.constant_loop(Q)
    theta = identity(CIRCLE.right.extend("T"))
    w = H.chi_kernel_witness(i, i, theta, CIRCLE)
    assert w.matrix.is_identity()


def test_chi_kernel_bad_theta():
    a, _ = _loops(9, Q)
    ring = CIRCLE.right.extend("T")
    bad = e12(ring, "T")  # theta(0,T) != I
    with pytest.raises(BoundaryMismatch):
        H.chi_kernel_witness(a, a, bad, CIRCLE)


@given(st.integers(0, 10**6))
def test_chi_companion_conditions(seed):
    a, b = _loops(seed, Q)
    H.chi_map(a, b, CIRCLE)  # raises on any of the five conditions


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_chi_product_certificate(seed):
    r = random.Random(seed)
    a, b = P.synth_loop_pair(r, Q)
    a2, b2 = P.synth_loop_pair(r, Q)
    m1 = H.chi_map(a, b, CIRCLE)
    m2 = H.chi_map(a2, b2, CIRCLE)
    prod = H.chi_map(a * a2, b * b2, CIRCLE, certificate=m1.companion @ m2.companion)
    assert prod.image.rep == m1.image.rep @ m2.image.rep


def test_chi_equivalence_carries_standard_to_certificate():
    r = random.Random(11)
    a, b = P.synth_loop_pair(r, Q)
    a2, b2 = P.synth_loop_pair(r, Q)
    cert = H.chi_map(a, b, CIRCLE).companion @ H.chi_map(a2, b2, CIRCLE).companion
    res = H.chi_map(a * a2, b * b2, CIRCLE, certificate=cert)
    theta = res.equivalence
    R, LR = CIRCLE.right, Q.extend("T")
    assert theta @ res.standard_companion == cert
    assert H._at(theta, LR, X=0).is_identity() and H._at(theta, LR, X=1).is_identity()
    assert H._at(theta, R, T=0).is_identity()
    assert H._at(theta, R, T=1) @ res.standard.rep.components()[0] == res.image.rep.components()[0]
    assert H.chi_map(a, b, CIRCLE).equivalence is None


# -- Mayer-Vietoris maps and kernels ------------------------------------------


def test_psi_examples():
    lp = H.constant_loop(CIRCLE)
    r, l = H.psi1(lp, CIRCLE)
    assert r.matrix.is_identity() and l.matrix.is_identity()
    b = H.loop_check(e21(QT, "T - T^2"), Q)
    a = H.loop_check(H._lift(b.matrix, CIRCLE.right.extend("T")), CIRCLE.right)
    assert H.psi2(a, b, CIRCLE).matrix.is_identity()
    i = H.constant_loop(Q)
    img = H.psi2(a, i, CIRCLE).matrix.components()
    assert img[0] == b.matrix and img[1] == b.matrix


def test_psi1_rejects_non_fibre_pair():
    ring = CIRCLE.extend("T")
    with pytest.raises(GlueMismatch):
        SLMatrix.from_components(ring, [e12(CIRCLE.right.extend("T"), "X*T*(1-T)"), identity(QT)])


def test_phi_examples():
    e = H.GammaElem(identity(CIRCLE))
    r, l = H.phi1(e, CIRCLE)
    assert r.rep.is_identity() and l.rep.is_identity()
    beta = e12(Q, "3")
    alpha = H.GammaElem(H._lift(beta, CIRCLE.right))
    assert H.phi2(alpha, H.GammaElem(beta), CIRCLE).rep.is_identity()
    a = H.GammaElem(e12(CIRCLE.right, "X + 1"))
    img = H.phi2(a, H.GammaElem(identity(Q)), CIRCLE).rep.components()
    assert img == [e12(Q, "1"), e12(Q, "2")]


def test_phi2_oracle(rng):
    for _ in range(5):
        alpha = elementary_assemble(random_factors(rng, CIRCLE.right, ("X",)), 2, CIRCLE.right)
        beta = elementary_assemble(random_factors(rng, Q, ()), 2, Q)
        got = H.phi2(H.GammaElem(alpha), H.GammaElem(beta), CIRCLE).rep.components()
        for k, (end, leg) in enumerate(zip((0, 1), got)):
            want = alpha.subs(Q, {"X": Poly.const(end)}) @ beta.inverse()
            assert leg == want


def test_ker_psi2_trivial():
    i = H.constant_loop(Q)
    a = H.constant_loop(CIRCLE.right)
    g = H.constant_homotopy(i)
    res = H.ker_psi2_preimage(a, i, g, g, CIRCLE)
    assert res.preimage.matrix.is_identity()
    assert res.homotopy.matrix.is_identity()


def test_ker_psi2_wrong_certificate():
    a, b, g0, g1 = P.synth_ker_psi2(random.Random(2), CIRCLE)
    assert not g0.ends[1].matrix.is_identity()
    wrong = H.constant_homotopy(H.constant_loop(Q))
    with pytest.raises(BoundaryMismatch) as exc:
        H.ker_psi2_preimage(a, b, wrong, g1, CIRCLE)
    assert exc.value.condition.startswith("gamma(T,1)")


def test_ker_phi2_unit_alpha():
    # alpha = I, sigma = sigma' a path to beta: gamma(X) = sigma'(X) sigma(1 - X)
    beta = elementary_assemble([ElemFactor(1, 2, Q.coerce(2)), ElemFactor(2, 1, Q.coerce(-1))], 2, Q)
    s = H.path_from_factors(sl2_factor_euclidean(beta), Q)
    res = H.ker_phi2_preimage(H.GammaElem(identity(CIRCLE.right)), H.GammaElem(beta), s, s, CIRCLE)
    x = Poly.var("X")
    R = CIRCLE.right
    want = H._at(s.matrix, R, T=x) @ H._at(s.matrix, R, T=1 - x)
    assert res.preimage.rep.components()[0] == want


def test_ker_phi2_wrong_endpoint():
    beta = e12(Q, "2")
    s = H.path_from_factors([ElemFactor(1, 2, Q.coerce(3))], Q)
    with pytest.raises(BoundaryMismatch) as exc:
        H.ker_phi2_preimage(H.GammaElem(identity(CIRCLE.right)), H.GammaElem(beta), s, s, CIRCLE)
    assert exc.value.condition == "sigma(1) alpha(0) = beta"


def test_ker_phi1_trivial():
    e = H.GammaElem(identity(CIRCLE))
    p = H.path_from_factors([], CIRCLE.right)
    s = H.path_from_factors([], Q)
    res = H.ker_phi1_preimage(e, p, s, CIRCLE)
    assert all(lp.matrix.is_identity() for lp in res.loops)


@pytest.mark.parametrize("square", [CIRCLE, CYL, builtin_square("torus")], ids=str)
@pytest.mark.parametrize("seed", range(3))
def test_mv_constructions(square, seed):
    r = random.Random(seed)
    vars = square.left.all_vars()
    res = H.ker_psi2_preimage(*P.synth_ker_psi2(r, square, vars), square)
    H.psi1(res.preimage, square)
    e, th, si = P.synth_ker_phi1(r, square, vars)
    H.ker_phi1_preimage(e, th, si, square)
    if not vars:
        a, b, s0, s1 = P.synth_ker_phi2(r, square)
        res = H.ker_phi2_preimage(a, b, s0, s1, square)
        r2, l2 = H.phi1(res.preimage, square)
        assert l2.rep == b.rep


def test_mv_needs_untwisted_square():
    with pytest.raises(UnsupportedRing):
        P.synth_ker_phi1(random.Random(0), builtin_square("klein"), ("X", "Y"))
    with pytest.raises(UnsupportedRing):
        H.chi_map(H.constant_loop(Q), H.constant_loop(Q), builtin_square("sphere"))


# -- circle and sphere ---------------------------------------------------


def test_circle_class_trivial():
    cc = H.circle_class(H.GammaElem(identity(CIRCLE)), CIRCLE)
    assert all(lp.matrix.is_identity() for lp in cc.loops)


def test_circle_class_bump():
    R = CIRCLE.right
    alpha = e12(R, "X*(1-X)")
    cc = H.circle_class(H.GammaElem(SLMatrix.from_components(CIRCLE, [alpha, identity(Q)])), CIRCLE)
    assert cc.chi.image.rep.components()[0] == alpha


def test_circle_class_normalizes_beta():
    e = P.synth_circle_element(random.Random(4), CIRCLE)
    alpha, beta = e.rep.components()
    cc = H.circle_class(e, CIRCLE)
    assert cc.chi.image.rep.components()[0] == H._lift(beta.inverse(), alpha.ring) @ alpha
    moved = H._at(cc.normalization.matrix, CIRCLE, T=1) @ e.rep
    assert moved == cc.chi.image.rep


def test_circle_class_needs_witnesses_over_circle_ring():
    torus = builtin_square("torus")
    with pytest.raises(UnsupportedRing):
        H._auto_path(identity(torus.left))


def test_sphere_trivial():
    sq = builtin_square("sphere")
    Q_, R = sq.left, sq.right
    p = H.path_from_factors([], R)
    g = H.path_from_factors([], Q_)
    path = H.sphere_trivial_witness(H.GammaElem(identity(sq)), p, g, H.constant_loop(R), H.constant_loop(Q_), sq)
    assert path.matrix.is_identity()


@pytest.mark.parametrize("seed", range(4))
def test_sphere_witness(seed):
    elem, theta, gamma, eta, delta, sq = P.synth_sphere(random.Random(seed))
    path = H.sphere_trivial_witness(elem, theta, gamma, eta, delta, sq)
    assert H._at(path.matrix, sq, T=1) == elem.rep


def test_sphere_wrong_eta():
    elem, theta, gamma, eta, delta, sq = P.synth_sphere(random.Random(1))
    R = sq.right
    bad = H.loop_check(eta.matrix @ e12(R.extend("T"), "X*T*(1-T)"), R)
    with pytest.raises(AssumptionUnmet):
        H.sphere_trivial_witness(elem, theta, gamma, bad, delta, sq)
