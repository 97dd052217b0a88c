"""Loops, homotopies and paths in SL2, and the maps of the interval Mayer-Vietoris sequence.

Equalities in the fundamental group or in ``Gamma = SL2 / QL2`` are never
decided. Every claimed equality comes with a witness matrix whose boundary
conditions are checked by exact substitution.

Variable conventions: loops and paths use the parameter ``T``, homotopies add
``S``; the interval square's own variable (``X`` for the circle and
cylinder squares) must differ from both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import (
    AssumptionUnmet,
    BoundaryMismatch,
    NotACompletion,
    NotALoop,
    RingMismatch,
    ShapeError,
    UnsupportedRing,
)
from .matrix import ElemFactor, Matrix, SLMatrix, identity, sl2_factor_euclidean
from .poly import Poly
from .rings import Diagonal, Element, FibreProduct, PolyRing, Ring, _same_ring


def _v(name: str) -> Poly:
    return Poly.var(name, (name,))


def _sl(m: Matrix) -> SLMatrix:
    if isinstance(m, SLMatrix):
        return m
    return m.to_sl()


def _at(m: Matrix, target: Ring, **images) -> SLMatrix:
    """Substitute ``var=value`` (ints or polynomials) and land in ``target``."""
    mapping = {k: (v if isinstance(v, Poly) else Poly.const(v)) for k, v in images.items()}
    return m.subs(target, mapping)


def _lift(m: Matrix, target: Ring) -> SLMatrix:
    """Read a matrix over a ring with fewer variables inside ``target``."""
    return m.subs(target, {})


def _expect(cond: bool, condition: str, detail: str = ""):
    if not cond:
        raise BoundaryMismatch(condition, detail)


# -- witness types ----------------------------------------------------------


@dataclass(frozen=True)
class LoopWitness:
    """``alpha(T)`` in ``SL2(A[T])`` with ``alpha(0) = alpha(1) = I``."""

    matrix: SLMatrix
    base: Ring
    var: str = "T"

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    def at(self, value) -> SLMatrix:
        return _at(self.matrix, self.base, **{self.var: value})

    def __mul__(self, other: LoopWitness) -> LoopWitness:
        return LoopWitness(self.matrix @ other.matrix, self.base, self.var)

    def inverse(self) -> LoopWitness:
        return LoopWitness(self.matrix.inverse(), self.base, self.var)


@dataclass(frozen=True)
class HomotopyWitness:
    """``gamma(T, S)`` from ``ends[0]`` (``S = 0``) to ``ends[1]`` (``S = 1``), fixed at ``T = 0, 1``."""

    matrix: SLMatrix
    ends: tuple
    var: str = "T"
    param: str = "S"


@dataclass(frozen=True)
class PathWitness:
    """``beta(T)`` with ``beta(0) = I`` and ``beta(1) = endpoint``."""

    matrix: SLMatrix
    endpoint: SLMatrix
    var: str = "T"

    @property
    def base(self) -> Ring:
        return self.endpoint.ring

    def at(self, value) -> SLMatrix:
        return _at(self.matrix, self.base, **{self.var: value})


@dataclass(frozen=True)
class GammaElem:
    """A representative of a class in ``Gamma(A) = SL2(A) / QL2(A)``."""

    rep: SLMatrix

    @property
    def ring(self) -> Ring:
        return self.rep.ring


@dataclass(frozen=True)
class PiElem:
    rep: LoopWitness


# -- checks -----------------------------------------------------------------


def loop_check(alpha: Matrix, base: Ring | None = None, var: str = "T") -> LoopWitness:
    if alpha.n != 2:
        raise ShapeError("loops live in SL2")
    alpha = _sl(alpha)
    base = base if base is not None else alpha.ring.drop(var)
    if not _same_ring(alpha.ring, base.extend(var)):
        raise RingMismatch(f"loop ring {alpha.ring} is not {base}[{var}]")
    for t in (0, 1):
        end = _at(alpha, base, **{var: t})
        if not end.is_identity():
            raise NotALoop(f"alpha({t}) = {end} is not the identity", end)
    return LoopWitness(alpha, base, var)


def constant_loop(base: Ring, var: str = "T") -> LoopWitness:
    return LoopWitness(identity(base.extend(var)), base, var)


def homotopy_check(
    gamma: Matrix, a: LoopWitness, b: LoopWitness, param: str = "S"
) -> HomotopyWitness:
    """Verify the four boundary conditions; the error names the failing one."""
    if not _same_ring(a.base, b.base) or a.var != b.var:
        raise RingMismatch("homotopy ends live over different rings")
    base, t = a.base, a.var
    gamma = _sl(gamma)
    loop_ring = base.extend(t)
    if not _same_ring(gamma.ring, base.extend(t, param)):
        raise RingMismatch(f"homotopy ring {gamma.ring} is not {base}[{t},{param}]")
    s_ring = base.extend(param)
    checks = (
        (f"gamma({t},0) = first loop", _at(gamma, loop_ring, **{param: 0}), a.matrix),
        (f"gamma({t},1) = second loop", _at(gamma, loop_ring, **{param: 1}), b.matrix),
        (f"gamma(0,{param}) = I", _at(gamma, s_ring, **{t: 0}), None),
        (f"gamma(1,{param}) = I", _at(gamma, s_ring, **{t: 1}), None),
    )
    for name, got, want in checks:
        ok = got.is_identity() if want is None else got == want
        _expect(ok, name, f"got {got}")
    return HomotopyWitness(gamma, (a, b), t, param)


def path_check(beta: Matrix, endpoint: Matrix, var: str = "T") -> PathWitness:
    beta, endpoint = _sl(beta), _sl(endpoint)
    base = endpoint.ring
    if not _same_ring(beta.ring, base.extend(var)):
        raise RingMismatch(f"path ring {beta.ring} is not {base}[{var}]")
    start = _at(beta, base, **{var: 0})
    _expect(start.is_identity(), "beta(0) = I", f"got {start}")
    end = _at(beta, base, **{var: 1})
    _expect(end == endpoint, "beta(1) = endpoint", f"got {end}, expected {endpoint}")
    return PathWitness(beta, endpoint, var)


# -- elementary constructions -----------------------------------------------


def path_from_factors(factors: Sequence[ElemFactor], base: Ring, var: str = "T") -> PathWitness:
    """``prod E_ij(T r_k)``: the standard path from ``I`` to an elementary product."""
    ring = base.extend(var)
    t = ring.coerce(_v(var))
    out = identity(ring, 2)
    end = identity(base, 2)
    for fac in factors:
        r = base.coerce(fac.r)
        out = out @ ElemFactor(fac.i, fac.j, t * _lift1(r, ring)).matrix(2, ring)
        end = end @ ElemFactor(fac.i, fac.j, r).matrix(2, base)
    return path_check(out, end, var)


def _lift1(e: Element, ring: Ring) -> Element:
    return e.subs({}, ring)


def contraction_homotopy(factors: Sequence[ElemFactor], base: Ring, var: str = "T", param: str = "S") -> HomotopyWitness:
    """For a loop ``prod E(r_k(T))`` with every ``r_k(0) = r_k(1) = 0``, the homotopy
    ``prod E(S r_k(T))`` from the constant loop to it."""
    loop_ring = base.extend(var)
    ring = base.extend(var, param)
    s = ring.coerce(_v(param))
    gamma = identity(ring, 2)
    alpha = identity(loop_ring, 2)
    for fac in factors:
        r = loop_ring.coerce(fac.r)
        gamma = gamma @ ElemFactor(fac.i, fac.j, s * _lift1(r, ring)).matrix(2, ring)
        alpha = alpha @ ElemFactor(fac.i, fac.j, r).matrix(2, loop_ring)
    return homotopy_check(gamma, constant_loop(base, var), loop_check(alpha, base, var), param)


def constant_homotopy(a: LoopWitness, param: str = "S") -> HomotopyWitness:
    return homotopy_check(_lift(a.matrix, a.base.extend(a.var, param)), a, a, param)


def gamma_row_product(r1: Sequence, sigma: Matrix, r2: Sequence, tau: Matrix) -> tuple:
    """``[a, b] * [c, d]``: the first column of ``sigma tau`` for completions ``sigma, tau``."""
    for row, m, name in ((r1, sigma, "sigma"), (r2, tau, "tau")):
        if m.n != 2 or m.det() != 1:
            raise NotACompletion(f"{name} is not in SL2")
        if tuple(m.column(0)) != tuple(m.ring.coerce(x) for x in row):
            raise NotACompletion(f"first column of {name} is not the given row")
    prod = sigma @ tau
    return prod.column(0)


# -- the chi map -------------------------------------------------------------


@dataclass(frozen=True)
class ChiResult:
    """``chi([alpha], [beta]) = (M(X,1), I)`` with its companion ``M(X,T)``.

    When a certificate ``M'`` was supplied, ``image`` is ``(M'(X,1), I)`` and
    ``equivalence`` is ``theta = M' M^-1``; ``(theta(X,1), I)`` carries the
    standard image to the certificate's in ``Gamma(B)``.
    """

    image: GammaElem
    companion: SLMatrix
    standard: GammaElem
    standard_companion: SLMatrix | None = field(default=None, compare=False)
    loops: tuple = field(default=(), compare=False)

    @cached_property
    def equivalence(self) -> SLMatrix | None:
        if self.standard_companion is None:
            return None
        return self.companion @ self.standard_companion.inverse()


def _interval_var(square: FibreProduct) -> str:
    x = square.interval_var
    if x is None:
        raise UnsupportedRing(f"{square} is not an interval square")
    return x


def _two_point_var(square: FibreProduct) -> str:
    """The exactness constructions need the untwisted square: ``g`` the diagonal."""
    x = _interval_var(square)
    if not isinstance(square.g, Diagonal):
        raise UnsupportedRing(f"{square}: g is twisted, the constructions assume the diagonal")
    return x


def _check_companion(M: SLMatrix, alpha: LoopWitness, beta: LoopWitness, x: str, label: str):
    base, t = alpha.base, alpha.var
    loop_ring = base.extend(t)
    x_ring = base.extend(x)
    _expect(_at(M, loop_ring, **{x: 0}) == alpha.matrix, f"{label}(0,{t}) = alpha({t})")
    _expect(_at(M, loop_ring, **{x: 1}) == beta.matrix, f"{label}(1,{t}) = beta({t})")
    _expect(_at(M, x_ring, **{t: 0}).is_identity(), f"{label}({x},0) = I")
    _expect(_at(M, base, **{x: 0, t: 1}).is_identity(), f"{label}(0,1) = I")
    _expect(_at(M, base, **{x: 1, t: 1}).is_identity(), f"{label}(1,1) = I")


def chi_companion(alpha: LoopWitness, beta: LoopWitness, x: str) -> SLMatrix:
    """``M(X,T) = alpha((1-X)T) beta(XT)``."""
    t = alpha.var
    ring = alpha.base.extend(x, t)
    xx, tt = _v(x), _v(t)
    a = _at(alpha.matrix, ring, **{t: (1 - xx) * tt})
    b = _at(beta.matrix, ring, **{t: xx * tt})
    return a @ b


def _fibre_pair(square: FibreProduct, right: SLMatrix, left: SLMatrix) -> SLMatrix:
    return SLMatrix.from_components(square, [right, left])


def chi_map(
    alpha: LoopWitness, beta: LoopWitness, square: FibreProduct, certificate: Matrix | None = None
) -> ChiResult:
    base = square.left
    for lp in (alpha, beta):
        if not _same_ring(lp.base, base):
            raise RingMismatch(f"loop over {lp.base}, square needs {base}")
    if alpha.var != beta.var:
        raise RingMismatch("loops use different parameters")
    x = _interval_var(square)
    if x == alpha.var:
        raise RingMismatch(f"loop parameter clashes with interval variable {x}")
    loop_check(alpha.matrix, base, alpha.var)
    loop_check(beta.matrix, base, beta.var)
    t = alpha.var
    M = chi_companion(alpha, beta, x)
    _check_companion(M, alpha, beta, x, "M")
    right = square.right
    std = GammaElem(_fibre_pair(square, _at(M, right, **{t: 1}), identity(base)))
    if certificate is None:
        return ChiResult(std, M, std, None, (alpha, beta))
    cert = _sl(certificate)
    if not _same_ring(cert.ring, M.ring):
        raise RingMismatch(f"certificate over {cert.ring}, expected {M.ring}")
    _check_companion(cert, alpha, beta, x, "M'")
    # theta = M' M^-1 is checked on its restrictions, which are products of
    # restrictions; the full product over B[T] is only formed on demand.
    loop_ring = base.extend(t)

    def theta_at(ring, **pt):
        return _at(cert, ring, **pt) @ _at(M, ring, **pt).inverse()

    _expect(theta_at(loop_ring, **{x: 0}).is_identity(), f"theta(0,{t}) = I")
    _expect(theta_at(loop_ring, **{x: 1}).is_identity(), f"theta(1,{t}) = I")
    _expect(theta_at(right, **{t: 0}).is_identity(), f"theta({x},0) = I")
    # theta(X,1) M(X,1) = M'(X,1) holds by construction of theta.
    img_right = _at(cert, right, **{t: 1})
    img = GammaElem(_fibre_pair(square, img_right, identity(base)))
    return ChiResult(img, cert, std, M, (alpha, beta))


def chi_kernel_witness(
    alpha: LoopWitness, beta: LoopWitness, theta: Matrix, square: FibreProduct, param: str = "S"
) -> HomotopyWitness:
    """From ``theta(X,T)`` killing ``chi([alpha],[beta])`` build ``gamma = theta M``,
    a homotopy from ``alpha`` to ``beta`` along ``X`` (renamed to ``param``)."""
    x = _interval_var(square)
    t = alpha.var
    M = chi_map(alpha, beta, square).companion
    theta = _sl(theta)
    if not _same_ring(theta.ring, M.ring):
        raise RingMismatch(f"theta over {theta.ring}, expected {M.ring}")
    base = alpha.base
    loop_ring = base.extend(t)
    right = square.right
    _expect(_at(theta, loop_ring, **{x: 0}).is_identity(), f"theta(0,{t}) = I")
    _expect(_at(theta, loop_ring, **{x: 1}).is_identity(), f"theta(1,{t}) = I")
    _expect(_at(theta, right, **{t: 0}).is_identity(), f"theta({x},0) = I")
    _expect((_at(theta, right, **{t: 1}) @ _at(M, right, **{t: 1})).is_identity(), f"theta({x},1) M({x},1) = I")
    gamma = theta @ M
    _expect(_at(gamma, loop_ring, **{x: 0}) == alpha.matrix, f"gamma(0,{t}) = alpha({t})")
    _expect(_at(gamma, loop_ring, **{x: 1}) == beta.matrix, f"gamma(1,{t}) = beta({t})")
    _expect(_at(gamma, right, **{t: 0}).is_identity(), f"gamma({x},0) = I")
    _expect(_at(gamma, right, **{t: 1}).is_identity(), f"gamma({x},1) = I")
    renamed = _at(gamma, base.extend(t, param), **{x: _v(param)})
    return homotopy_check(renamed, alpha, beta, param)


def chi_kernel_certificate(h: HomotopyWitness, square: FibreProduct) -> SLMatrix:
    """``theta(X,T) = h(T,X) M(X,T)^-1`` for a known homotopy ``h`` between the loops."""
    alpha, beta = h.ends
    x = _interval_var(square)
    M = chi_map(alpha, beta, square).companion
    hx = _at(h.matrix, M.ring, **{h.param: _v(x)})
    return hx @ M.inverse()


# -- Mayer-Vietoris maps --------------------------------------------------


def _hom_on_loop(hom, lp: LoopWitness) -> SLMatrix:
    return lp.matrix.apply(hom.extend(lp.var))


def psi1(loop: LoopWitness, square: FibreProduct) -> tuple[LoopWitness, LoopWitness]:
    """Component projection ``pi1(SL2(B)) -> pi1(SL2(A[X])) + pi1(SL2(A))``."""
    if not _same_ring(loop.base, square):
        raise RingMismatch(f"loop over {loop.base}, expected {square}")
    loop_check(loop.matrix, square, loop.var)
    right, left = loop.matrix.components()
    return loop_check(right, square.right, loop.var), loop_check(left, square.left, loop.var)


def psi2(a: LoopWitness, b: LoopWitness, square: FibreProduct) -> LoopWitness:
    """``(f(alpha) g(beta)^-1)``; for the interval square ``(alpha(0) beta^-1, alpha(1) beta^-1)``."""
    if not _same_ring(a.base, square.right) or not _same_ring(b.base, square.left):
        raise RingMismatch("psi2 needs loops over the right and left rings")
    loop_check(a.matrix, a.base, a.var)
    loop_check(b.matrix, b.base, b.var)
    fa = _hom_on_loop(square.f, a)
    gb = _hom_on_loop(square.g, b)
    return loop_check(fa @ gb.inverse(), square.common, a.var)


def phi1(elem: GammaElem, square: FibreProduct) -> tuple[GammaElem, GammaElem]:
    if not _same_ring(elem.ring, square):
        raise RingMismatch(f"element over {elem.ring}, expected {square}")
    _sl(elem.rep)
    right, left = elem.rep.components()
    return GammaElem(right), GammaElem(left)


def phi2(a: GammaElem, b: GammaElem, square: FibreProduct) -> GammaElem:
    if not _same_ring(a.ring, square.right) or not _same_ring(b.ring, square.left):
        raise RingMismatch("phi2 needs elements over the right and left rings")
    fa = _sl(a.rep).apply(square.f)
    gb = _sl(b.rep).apply(square.g)
    return GammaElem(fa @ gb.inverse())


# -- exactness constructions -------------------------------------------------


@dataclass(frozen=True)
class KerPsi2Result:
    preimage: LoopWitness  # (theta(X,T), beta(T)) over B
    homotopy: HomotopyWitness  # M(X,T,S) from alpha(X)(T) to theta(X,T) over A[X]


def ker_psi2_preimage(
    a: LoopWitness,
    b: LoopWitness,
    g0: HomotopyWitness,
    g1: HomotopyWitness,
    square: FibreProduct,
) -> KerPsi2Result:
    """For ``([alpha(X)(T)], [beta(T)])`` in the kernel of psi2, witnessed by homotopies
    ``g0: I ~ alpha(0) beta^-1`` and ``g1: I ~ alpha(1) beta^-1``, build

    ``theta(X,T) = g0(T,1-X)^-1 g1(T,X)^-1 alpha(X)(T)`` and
    ``M(X,T,S) = g0(T,(1-X)S)^-1 g1(T,XS)^-1 alpha(X)(T)``.
    """
    x = _two_point_var(square)
    base = square.left
    t = a.var
    s = g0.param
    if g1.param != s or g0.var != t or g1.var != t:
        raise RingMismatch("certificates use different parameters")
    _check_mv_homotopy(g0, a, b, x, 0, "gamma")
    _check_mv_homotopy(g1, a, b, x, 1, "gamma'")
    xx, ss = _v(x), _v(s)
    ring_xt = square.right.extend(t)
    ring_xts = square.right.extend(t, s)
    theta = (
        _at(g0.matrix, ring_xt, **{s: 1 - xx}).inverse()
        @ _at(g1.matrix, ring_xt, **{s: xx}).inverse()
        @ a.matrix
    )
    loop_ring = base.extend(t)
    _expect(_at(theta, loop_ring, **{x: 0}) == b.matrix, f"theta(0,{t}) = beta({t})")
    _expect(_at(theta, loop_ring, **{x: 1}) == b.matrix, f"theta(1,{t}) = beta({t})")
    theta_loop = loop_check(theta, square.right, t)
    pair = _fibre_pair(square.extend(t), theta, b.matrix)
    preimage = loop_check(pair, square, t)
    M = (
        _at(g0.matrix, ring_xts, **{s: (1 - xx) * ss}).inverse()
        @ _at(g1.matrix, ring_xts, **{s: xx * ss}).inverse()
        @ _lift(a.matrix, ring_xts)
    )
    hom = homotopy_check(M, a, theta_loop, s)
    return KerPsi2Result(preimage, hom)


def _check_mv_homotopy(g: HomotopyWitness, a: LoopWitness, b: LoopWitness, x: str, end: int, name: str):
    lo, hi = g.ends
    base = b.base
    loop_ring = base.extend(a.var)
    target = _at(a.matrix, loop_ring, **{x: end}) @ b.matrix.inverse()
    _expect(lo.matrix.is_identity(), f"{name}({a.var},0) = I")
    _expect(hi.matrix == target, f"{name}({a.var},1) = alpha({end})({a.var}) beta({a.var})^-1")
    homotopy_check(g.matrix, lo, hi, g.param)


@dataclass(frozen=True)
class KerPhi1Result:
    loops: tuple  # (M(0,T), M(1,T)) over A
    chi: ChiResult  # image (beta^-1 alpha(X), I) via the certificate M
    normalization: PathWitness  # (sigma^-1, sigma^-1) over B: (alpha, beta) ~ (beta^-1 alpha, I)


def ker_phi1_preimage(
    elem: GammaElem, theta: PathWitness, sigma: PathWitness, square: FibreProduct
) -> KerPhi1Result:
    """``(alpha(X), beta)`` with paths ``theta`` to ``alpha`` and ``sigma`` to ``beta``;
    ``M(X,T) = sigma(T)^-1 theta(X,T)`` gives loops whose chi-image is ``(beta^-1 alpha(X), I)``."""
    x = _two_point_var(square)
    alpha, beta = elem.rep.components()
    path_check(theta.matrix, alpha, theta.var)
    path_check(sigma.matrix, beta, sigma.var)
    t = theta.var
    if sigma.var != t:
        raise RingMismatch("paths use different parameters")
    base = square.left
    ring_xt = square.right.extend(t)
    s_inv = sigma.matrix.inverse()
    M = _lift(s_inv, ring_xt) @ theta.matrix
    loops = tuple(loop_check(_at(M, base.extend(t), **{x: e}), base, t) for e in (0, 1))
    chi = chi_map(loops[0], loops[1], square, certificate=M)
    want = _lift(beta.inverse(), alpha.ring) @ alpha
    _expect(chi.image.rep.components()[0] == want, f"chi image = beta^-1 alpha({x})")
    norm = normalization_path(elem, sigma, square)
    return KerPhi1Result(loops, chi, norm)


def normalization_path(elem: GammaElem, sigma: PathWitness, square: FibreProduct) -> PathWitness:
    """``(sigma(T)^-1, sigma(T)^-1)`` in ``SL2(B[T])``; it carries ``(alpha, beta)`` to ``(beta^-1 alpha, I)``."""
    _two_point_var(square)
    alpha, beta = elem.rep.components()
    path_check(sigma.matrix, beta, sigma.var)
    t = sigma.var
    s_inv = sigma.matrix.inverse()
    # sigma^-1 is constant along the interval, so it glues to itself under the diagonal
    right = _lift(s_inv, square.right.extend(t))
    pair = SLMatrix.from_components(square.extend(t), [right, s_inv])
    end = _at(pair, square, **{t: 1})
    path = path_check(pair, end, t)
    moved = end @ elem.rep
    _expect(moved.components()[1].is_identity(), "sigma(1)^-1 beta = I")
    _expect(moved.components()[0] == _lift(beta.inverse(), alpha.ring) @ alpha, "sigma(1)^-1 alpha = beta^-1 alpha")
    return path


@dataclass(frozen=True)
class KerPhi2Result:
    preimage: GammaElem  # (gamma(X), beta) over B
    equivalence: PathWitness  # theta(X,T) over A[X] with theta(X,1) alpha(X) = gamma(X)


def ker_phi2_preimage(
    a: GammaElem, b: GammaElem, sigma: PathWitness, sigma2: PathWitness, square: FibreProduct
) -> KerPhi2Result:
    """``([alpha(X)], [beta])`` with paths ``sigma, sigma'`` satisfying
    ``sigma(1) alpha(0) = beta = sigma'(1) alpha(1)``;
    ``gamma(X) = sigma'(X) sigma(1-X) alpha(X)`` and ``theta(X,T) = sigma'(XT) sigma((1-X)T)``."""
    x = _two_point_var(square)
    alpha, beta = _sl(a.rep), _sl(b.rep)
    base = square.left
    if not _same_ring(alpha.ring, square.right) or not _same_ring(beta.ring, base):
        raise RingMismatch("ker_phi2_preimage needs alpha over A[X] and beta over A")
    t = sigma.var
    if sigma2.var != t:
        raise RingMismatch("paths use different parameters")
    path_check(sigma.matrix, sigma.endpoint, t)
    path_check(sigma2.matrix, sigma2.endpoint, t)
    a0 = _at(alpha, base, **{x: 0})
    a1 = _at(alpha, base, **{x: 1})
    _expect(sigma.endpoint @ a0 == beta, "sigma(1) alpha(0) = beta")
    _expect(sigma2.endpoint @ a1 == beta, "sigma'(1) alpha(1) = beta")
    xx, tt = _v(x), _v(t)
    right = square.right
    gamma = _at(sigma2.matrix, right, **{t: xx}) @ _at(sigma.matrix, right, **{t: 1 - xx}) @ alpha
    pre = GammaElem(_fibre_pair(square, gamma, beta))
    ring_xt = right.extend(t)
    theta = _at(sigma2.matrix, ring_xt, **{t: xx * tt}) @ _at(sigma.matrix, ring_xt, **{t: (1 - xx) * tt})
    th = path_check(theta, _at(theta, right, **{t: 1}), t)
    _expect(th.endpoint @ alpha == gamma, f"theta({x},1) alpha({x}) = gamma({x})")
    return KerPhi2Result(pre, th)


# -- the circle and sphere squares -----------------------------------------


@dataclass(frozen=True)
class CircleClass:
    loops: tuple  # (M(0,T), M(1,T))
    chi: ChiResult  # chi.image = (beta^-1 alpha(X), I) exactly
    normalization: PathWitness  # (alpha, beta) ~ (beta^-1 alpha, I)
    companion: SLMatrix  # M(X,T) with M(X,0) = I, M(X,1) = beta^-1 alpha(X)


def _auto_path(m: SLMatrix, var: str = "T") -> PathWitness:
    ring = m.ring
    if not isinstance(ring, PolyRing) or len(ring.vars) > 1:
        raise UnsupportedRing(f"no automatic path witnesses over {ring}")
    return path_from_factors(sl2_factor_euclidean(m), ring, var)


def circle_class(
    elem: GammaElem,
    square: FibreProduct,
    alpha_path: PathWitness | None = None,
    beta_path: PathWitness | None = None,
    var: str = "T",
) -> CircleClass:
    """Preimage under chi of ``(alpha(X), beta)`` in ``SL2(B)``.

    Needs a path ``sigma`` from ``I`` to ``beta`` and a path ``M(X,T)`` from ``I``
    to ``beta^-1 alpha(X)``. Over ``A = Q`` both come from the Euclidean
    factorization; otherwise they must be supplied.
    """
    _interval_var(square)
    alpha, beta = elem.rep.components()
    normalized = _lift(beta.inverse(), alpha.ring) @ alpha
    sigma = beta_path if beta_path is not None else _auto_path(beta, var)
    mpath = alpha_path if alpha_path is not None else _auto_path(normalized, var)
    path_check(sigma.matrix, beta, var)
    path_check(mpath.matrix, normalized, var)
    M = mpath.matrix
    base = square.left
    loops = tuple(loop_check(_at(M, base.extend(var), **{square.interval_var: e}), base, var) for e in (0, 1))
    chi = chi_map(loops[0], loops[1], square, certificate=M)
    _expect(chi.image.rep.components()[0] == normalized, "chi image = beta^-1 alpha(X)")
    _expect(chi.image.rep.components()[1].is_identity(), "chi image second component = I")
    norm = normalization_path(elem, sigma, square)
    return CircleClass(loops, chi, norm, M)


def sphere_trivial_witness(
    elem: GammaElem,
    theta: PathWitness,
    gamma: PathWitness,
    eta: LoopWitness,
    delta: LoopWitness,
    square: FibreProduct,
    certificate: HomotopyWitness | None = None,
) -> PathWitness:
    """A path in ``SL2(B[T])`` from ``I`` to ``(alpha(X,Y), beta)``.

    ``theta`` runs to ``alpha`` over ``Q[X,Y]``, ``gamma`` to ``beta`` over ``Q``;
    ``eta`` and ``delta`` are loops with ``nu(theta gamma^-1) = nu(eta delta^-1)``
    exactly in the circle ring. The path is ``(eta^-1 theta, delta^-1 gamma)``.
    """
    alpha, beta = elem.rep.components()
    path_check(theta.matrix, alpha, theta.var)
    path_check(gamma.matrix, beta, gamma.var)
    t = theta.var
    for lp in (eta, delta):
        if lp.var != t:
            raise RingMismatch("witnesses use different parameters")
    loop_check(eta.matrix, square.right, t)
    loop_check(delta.matrix, square.left, t)
    nu = square.f.extend(t)
    g = square.g.extend(t)
    m_bar = theta.matrix.apply(nu) @ gamma.matrix.apply(g).inverse()
    other = eta.matrix.apply(nu) @ delta.matrix.apply(g).inverse()
    if m_bar != other:
        raise AssumptionUnmet("the circle-ring image of theta gamma^-1 differs from that of eta delta^-1")
    if certificate is not None:
        lo, hi = certificate.ends
        if lo.matrix != m_bar or hi.matrix != other:
            raise BoundaryMismatch("certificate ends", "certificate does not join the two circle loops")
        homotopy_check(certificate.matrix, lo, hi, certificate.param)
    right = eta.matrix.inverse() @ theta.matrix
    left = delta.matrix.inverse() @ gamma.matrix
    pair = SLMatrix.from_components(square.extend(t), [right, left])
    return path_check(pair, elem.rep, t)
