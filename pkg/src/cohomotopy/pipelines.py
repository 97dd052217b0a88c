"""End-to-end pipelines: the Swan certificate, the square demos and seeded
instances for the exactness constructions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import homotopy as H
from .cocycle import (
    cocycle_extract,
    completion_to_split,
    lift_split,
    milnor_patch,
    split_check,
    split_complete,
    stabilized_factors,
    SplitWitness,
)
from .errors import VerificationError
from .matrix import ElemFactor, SLMatrix, elementary_assemble, identity, sl2_factor_euclidean
from .poly import Poly
from .random_instances import InstanceConfig, random_factors, random_loop_factors
from .rings import FibreProduct, hom_preimage
from .smith import ObstructionGroup, obstruction_group, smith_normal_form
from .squares import builtin_square, circle_power_map, circle_ring
from .winding import tau, winding_number


# -- Swan ----------------------------------------------------------------


@dataclass(frozen=True)
class SwanCertificate:
    verdict: str  # "non-free" or "inconclusive"
    winding: int
    n: int
    residual: float
    samples: int
    scaling_checked: bool
    reason: str = ""

    def to_doc(self) -> dict:
        return {
            "kind": "swan-certificate",
            "verdict": self.verdict,
            "winding": self.winding,
            "n": self.n,
            "residual": self.residual,
            "samples": self.samples,
            "scaling_checked": self.scaling_checked,
            "reason": self.reason,
        }


def swan_certificate(n: int, lam: SLMatrix, samples: int = 256) -> SwanCertificate:
    """One-sided test: certify that ``lam`` does not split over the degree-``n`` square.

    If ``lam = g(delta) f(gamma)`` then ``winding(lam) = n winding(delta) + winding(f(gamma))``
    and ``f`` is the quotient map from a polynomial ring, whose images wind
    zero times; so ``winding(lam)`` would be a multiple of ``n``. A winding
    number not divisible by ``n`` therefore proves the row is not completable.
    The premise ``winding(mu_n(tau)) = n winding(tau)`` is re-checked here.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if lam.ring != circle_ring():
        raise ValueError("lam must be over the circle ring")
    rep = winding_number(lam, samples=samples)
    t = tau()
    wt = winding_number(t, samples=samples).value
    scaled = winding_number(t.apply(circle_power_map(n)), samples=samples).value
    scaling_ok = scaled == n * wt
    if not scaling_ok:
        raise VerificationError(f"winding(mu_{n}(tau)) = {scaled}, expected {n * wt}")
    w = rep.value
    if w % n != 0:
        verdict, reason = "non-free", f"winding {w} is not divisible by {n}"
    else:
        verdict, reason = "inconclusive", f"winding {w} is divisible by {n}"
    return SwanCertificate(verdict, w, n, rep.residual, rep.samples, scaling_ok, reason)


@dataclass(frozen=True)
class SwanDemo:
    certificate: SwanCertificate
    lam: SLMatrix
    obstruction: ObstructionGroup


def swan_demo(n: int = 3, samples: int = 256) -> SwanDemo:
    """The co-cycle ``sigma = tau^2`` over the degree-``n`` square."""
    t = tau()
    lam = t @ t
    if lam.det() != 1:
        raise VerificationError("tau^2 is not in SL2")
    cert = swan_certificate(n, lam, samples)
    return SwanDemo(cert, lam, obstruction_group(builtin_square("swan", n)))


# -- obstruction demos -----------------------------------------------------


@dataclass(frozen=True)
class ObstructionDemo:
    name: str
    group: ObstructionGroup
    smith: tuple
    expected_generators: tuple = field(default=())


def klein_demo() -> ObstructionDemo:
    sq = builtin_square("klein")
    g = obstruction_group(sq)
    stated = ((1, 1), (1, -1))
    if sorted(g.generators) != sorted(stated):
        raise VerificationError(f"Klein generators {g.generators}, expected {stated}")
    d = smith_normal_form(stated).diagonal
    if tuple(d) != g.invariant_factors:
        raise VerificationError("Smith form of the stated generators differs from the computed group")
    return ObstructionDemo("klein", g, tuple(d), stated)


def torus_demo() -> ObstructionDemo:
    sq = builtin_square("torus")
    g = obstruction_group(sq)
    if any(gen != (1, 1) for gen in g.generators):
        raise VerificationError(f"torus generators {g.generators}, expected multiples of (1, 1)")
    d = smith_normal_form(g.generators).diagonal if g.generators else ()
    return ObstructionDemo("torus", g, tuple(d), ((1, 1),))


# -- cylinder ------------------------------------------------------------


@dataclass(frozen=True)
class CylinderDemo:
    lam: SLMatrix
    factors: tuple  # Euclidean factors of each component
    witness: SplitWitness
    completion: object
    row: object


def interval_split(lam: SLMatrix, square: FibreProduct) -> tuple[SplitWitness, tuple]:
    """Split a co-cycle over ``A + A`` for an interval square with A = Q or Q[v].

    Each component is factored by the Euclidean algorithm,
    ``lam = (prod E(a_k), prod E(b_l))``, and
    ``gamma(X) = prod E((1-X) a_k) prod E(X b_l)`` satisfies ``f(gamma) = lam``
    with ``delta = I``.
    """
    x = square.interval_var
    at0, at1 = lam.components()
    fa = sl2_factor_euclidean(at0)
    fb = sl2_factor_euclidean(at1)
    B = square.right
    xx = Poly.var(x, (x,))
    parts = [ElemFactor(f.i, f.j, B.coerce(f.r.value * (1 - xx))) for f in fa]
    parts += [ElemFactor(f.i, f.j, B.coerce(f.r.value * xx)) for f in fb]
    gamma = elementary_assemble(parts, 2, B)
    return SplitWitness(gamma, identity(square.left, 2)), (tuple(fa), tuple(fb))


def cylinder_demo(seed: int = 0) -> CylinderDemo:
    """Random co-cycle over ``Q[Y] + Q[Y]``: split it, patch a row, complete the row."""
    rng = random.Random(seed)
    sq = builtin_square("cylinder")
    D = sq.common
    A = sq.left
    cfg = InstanceConfig(max_factors=3, max_degree=2)
    comps = [elementary_assemble(random_factors(rng, A, ("Y",), cfg), 2, A) for _ in range(2)]
    lam = SLMatrix.from_components(D, comps)
    w, facs = interval_split(lam, sq)
    # patch a row whose co-cycle is lam, from factors of lam over D
    dfac = _sum_factors(facs, D)
    twists = [D.coerce(("Y", "1")) for _ in dfac]
    p = milnor_patch(lam, stabilized_factors(dfac, twists), sq)
    cyc = cocycle_extract(p.row, p.theta, p.sigma, sq)
    if cyc.lam != lam:
        raise VerificationError("patched row does not return its co-cycle")
    split_check(cyc, w, sq)
    comp = split_complete(p.row, cyc, w, p.theta, p.sigma, sq)
    return CylinderDemo(lam, facs, w, comp, p.row)


def _sum_factors(facs, D):
    """Factors over ``A + A`` from factor lists of the two components."""
    zero = D.components[0].zero()
    out = [ElemFactor(f.i, f.j, D.coerce((f.r, zero))) for f in facs[0]]
    out += [ElemFactor(f.i, f.j, D.coerce((zero, f.r))) for f in facs[1]]
    return out


# -- cocycle round trip ------------------------------------------------------


@dataclass(frozen=True)
class RoundTrip:
    lam: SLMatrix
    patch: object
    completion: object
    witness: SplitWitness


def cocycle_round_trip(square: FibreProduct, factors, twists=None) -> RoundTrip:
    D = square.common
    lam = elementary_assemble(factors, 2, D)
    p = milnor_patch(lam, stabilized_factors(factors, twists), square)
    cyc = cocycle_extract(p.row, p.theta, p.sigma, square)
    if cyc.lam != lam:
        raise VerificationError("cocycle_extract did not return lam")
    w = lift_split(factors, square)
    comp = split_complete(p.row, cyc, w, p.theta, p.sigma, square)
    w2 = completion_to_split(p.row, comp, p.theta, p.sigma, square)
    if w2.delta.apply(square.g) @ w2.gamma.apply(square.f) != lam:
        raise VerificationError("recovered split does not recombine to lam")
    return RoundTrip(lam, p, comp, w2)


def random_circle_cocycle(rng: random.Random, cfg: InstanceConfig = InstanceConfig()):
    """Factors over the circle ring with twists that make the patched row nontrivial."""
    s1 = circle_ring()
    fs = random_factors(rng, s1, ("X", "Y"), cfg)
    twists = [s1.coerce(rng.choice(["X", "X + Y", "2*X - Y", "X*Y + 1"])) for _ in fs]
    return fs, twists


# -- instances for the exactness constructions ---------------------------------


def _x_of(square):
    x = H._interval_var(square)
    return Poly.var(x, (x,))


def loop_vars(square) -> tuple[str, str]:
    """Loop and homotopy variable names that do not clash with the square's own."""
    taken = set(square.all_vars())
    free = [v for v in ("T", "S", "U", "V", "W") if v not in taken]
    return free[0], free[1]


def _scaled(fs, ring, p):
    return [ElemFactor(f.i, f.j, ring.coerce(f.r.value * p)) for f in fs]


def synth_ker_psi2(
    rng: random.Random, square: FibreProduct, vars=(), cfg=InstanceConfig(max_factors=2, max_degree=1)
):
    """``(alpha(X)(T), beta(T))`` in the kernel of psi2 with its two homotopies.

    ``alpha(X) = prod E((1-X) e0_k) prod E(X e1_l) E(X(1-X) extra) beta`` where
    ``e0, e1`` are loops contracted by scaling.
    """
    H._two_point_var(square)
    A, R = square.left, square.right
    t, s = loop_vars(square)
    AT, RT = A.extend(t), R.extend(t)
    x = _x_of(square)
    beta_f = random_loop_factors(rng, A, vars, t, cfg)
    e0 = random_loop_factors(rng, A, vars, t, cfg)
    e1 = random_loop_factors(rng, A, vars, t, cfg)
    extra = random_loop_factors(rng, A, vars, t, cfg)
    beta = H.loop_check(elementary_assemble(beta_f, 2, AT), A, t)
    parts = _scaled(e0, RT, 1 - x) + _scaled(e1, RT, x) + _scaled(extra, RT, x * (1 - x))
    alpha_m = elementary_assemble(parts, 2, RT) @ H._lift(beta.matrix, RT)
    alpha = H.loop_check(alpha_m, R, t)
    g0 = H.contraction_homotopy(e0, A, t, s)
    g1 = H.contraction_homotopy(e1, A, t, s)
    return alpha, beta, g0, g1


def synth_ker_phi1(
    rng: random.Random, square: FibreProduct, vars=(), cfg=InstanceConfig(max_factors=2, max_degree=2)
):
    """``(alpha(X), beta)`` in SL2(B) with paths ``theta`` to alpha and ``sigma`` to beta."""
    H._two_point_var(square)
    A, R = square.left, square.right
    x = _x_of(square)
    bf = random_factors(rng, A, vars, cfg)
    xf = random_factors(rng, R, tuple(vars) + (square.interval_var,), cfg, scale=x * (1 - x))
    beta = elementary_assemble(bf, 2, A)
    alpha = H._lift(beta, R) @ elementary_assemble(xf, 2, R)
    elem = H.GammaElem(SLMatrix.from_components(square, [alpha, beta]))
    t = loop_vars(square)[0]
    theta = H.path_from_factors(_scaled(bf, R, 1) + xf, R, t)
    sigma = H.path_from_factors(bf, A, t)
    return elem, theta, sigma


def synth_ker_phi2(rng: random.Random, square: FibreProduct, cfg=InstanceConfig(max_factors=3, max_degree=2)):
    """``(alpha(X), beta)`` with paths ``sigma, sigma'`` to ``beta alpha(0)^-1`` and
    ``beta alpha(1)^-1``; needs A = Q so the paths come from Euclidean factors."""
    H._two_point_var(square)
    A, R = square.left, square.right
    x = square.interval_var
    alpha = elementary_assemble(random_factors(rng, R, (x,), cfg), 2, R)
    beta = elementary_assemble(random_factors(rng, A, (), cfg), 2, A)
    a0 = H._at(alpha, A, **{x: 0})
    a1 = H._at(alpha, A, **{x: 1})
    t = loop_vars(square)[0]
    s0 = H.path_from_factors(sl2_factor_euclidean(beta @ a0.inverse()), A, t)
    s1 = H.path_from_factors(sl2_factor_euclidean(beta @ a1.inverse()), A, t)
    return H.GammaElem(alpha), H.GammaElem(beta), s0, s1


def synth_circle_element(rng: random.Random, square: FibreProduct, cfg=InstanceConfig(max_factors=3, max_degree=2)):
    """An element ``(alpha(X), beta)`` of SL2(B) for the circle square."""
    A, R = square.left, square.right
    x = _x_of(square)
    beta = elementary_assemble(random_factors(rng, A, (), cfg), 2, A)
    bump = elementary_assemble(random_factors(rng, R, (square.interval_var,), cfg, scale=x * (1 - x)), 2, R)
    alpha = H._lift(beta, R) @ bump
    return H.GammaElem(SLMatrix.from_components(square, [alpha, beta]))


def synth_fibre_loop(rng: random.Random, square: FibreProduct, cfg=InstanceConfig(max_factors=2, max_degree=1)):
    """A loop over ``B[T]``: factors over ``C[T]`` glued to their f-section lifts."""
    t = loop_vars(square)[0]
    fs = random_loop_factors(rng, square.left, square.left.all_vars(), t, cfg)
    g, f = square.g.extend(t), square.f.extend(t)
    lifted = [ElemFactor(e.i, e.j, hom_preimage(f, g.apply(e.r))) for e in fs]
    right = elementary_assemble(lifted, 2, square.right.extend(t))
    left = elementary_assemble(fs, 2, square.left.extend(t))
    return H.loop_check(SLMatrix.from_components(square.extend(t), [right, left]), square, t)


def synth_sphere(rng: random.Random, cfg=InstanceConfig(max_factors=2, max_degree=1)):
    """A sphere-square element with all the certificates of the triviality argument.

    ``alpha = beta prod E((X^2+Y^2-1) r_k)``, ``theta = gamma rho eta0`` with
    ``rho`` the scaled path of the relation factors and ``eta0`` a loop;
    ``eta = gamma eta0 gamma^-1 delta`` matches the circle-ring image.
    """
    sq = builtin_square("sphere")
    Q, R = sq.left, sq.right
    RT, QT = R.extend("T"), Q.extend("T")
    rel = Poly.var("X", ("X", "Y")) ** 2 + Poly.var("Y", ("X", "Y")) ** 2 - 1
    bf = random_factors(rng, Q, (), cfg)
    rf = random_factors(rng, R, ("X", "Y"), cfg, scale=rel)
    beta = elementary_assemble(bf, 2, Q)
    alpha = H._lift(beta, R) @ elementary_assemble(rf, 2, R)
    elem = H.GammaElem(SLMatrix.from_components(sq, [alpha, beta]))
    gamma = H.path_from_factors(bf, Q)
    rho = H.path_from_factors(rf, R).matrix
    eta0 = elementary_assemble(random_loop_factors(rng, R, ("X", "Y"), "T", cfg), 2, RT)
    g_r = H._lift(gamma.matrix, RT)
    theta = H.path_check(g_r @ rho @ eta0, alpha)
    delta = H.loop_check(elementary_assemble(random_loop_factors(rng, Q, (), "T", cfg), 2, QT), Q)
    eta = H.loop_check(g_r @ eta0 @ g_r.inverse() @ H._lift(delta.matrix, RT), R)
    return elem, theta, gamma, eta, delta, sq


def synth_loop_pair(rng: random.Random, base, vars=(), cfg=InstanceConfig(max_factors=3, max_degree=2), t="T"):
    from .random_instances import random_loop

    a, _ = random_loop(rng, base, vars, t, cfg)
    b, _ = random_loop(rng, base, vars, t, cfg)
    return a, b
