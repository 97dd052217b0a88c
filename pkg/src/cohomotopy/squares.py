"""Built-in Milnor squares.

=============  =========================  ==================  ===================
name           right ring B (f surj.)     left ring C         common ring D
=============  =========================  ==================  ===================
circle         Q[X], f = eval at 0, 1     Q, g = diagonal     Q + Q
cylinder       Q[Y][X], eval X = 0, 1     Q[Y], diagonal      Q[Y] + Q[Y]
torus          S1[T], eval T = 0, 1       S1, diagonal        S1 + S1
klein          S1[T], eval T = 0, 1       S1, a -> (a, h(a))  S1 + S1
sphere         Q[X,Y], quotient map       Q, inclusion        S1
projective     Q[X,Y], quotient map       S1, mu_2            S1
swan(n)        Q[X,Y], quotient map       S1, mu_n            S1
=============  =========================  ==================  ===================

``S1`` is ``Q[X,Y]/(X^2 + Y^2 - 1)`` with ``X`` distinguished, ``h`` is the
reflection ``Y -> -Y`` and ``mu_n`` is the degree-``n`` map ``z -> z^n``
written out through ``(X + iY)^n``.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import UnknownSquare
from .poly import Poly, parse_poly
from .rings import (
    Diagonal,
    DirectSum,
    Evaluation,
    FibreProduct,
    Pairing,
    PolyRing,
    QuotientMap,
    QuotientRing,
    Ring,
    RingHom,
    Substitution,
    hom_respects_relation,
    identity_hom,
)

CIRCLE_VARS = ("X", "Y")


@lru_cache(maxsize=None)
def circle_ring() -> QuotientRing:
    base = PolyRing(CIRCLE_VARS)
    return QuotientRing(base, parse_poly("X^2 + Y^2 - 1", CIRCLE_VARS), "X")


def power_map_images(n: int) -> tuple[Poly, Poly]:
    """Real and imaginary parts of ``(X + iY)^n``."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    x, y = Poly.var("X", CIRCLE_VARS), Poly.var("Y", CIRCLE_VARS)
    re, im = Poly.const(1, CIRCLE_VARS), Poly.const(0, CIRCLE_VARS)
    for _ in range(n):
        re, im = re * x - im * y, re * y + im * x
    return re, im


@lru_cache(maxsize=None)
def circle_power_map(n: int) -> Substitution:
    s1 = circle_ring()
    re, im = power_map_images(n)
    return Substitution(s1, s1, {"X": re, "Y": im}, surjective=(n == 1))


@lru_cache(maxsize=None)
def klein_reflection() -> Substitution:
    s1 = circle_ring()
    return Substitution(s1, s1, {"Y": -Poly.var("Y", CIRCLE_VARS)}, surjective=True)


def interval_square(base: Ring, var: str, twist: RingHom | None = None, label: str = "") -> FibreProduct:
    """``{(p(var), a) : p(0) = a, p(1) = twist(a)}`` over ``base``.

    With ``twist=None`` this is the ring ``B`` of two-point gluing, with
    ``g`` the diagonal.
    """
    right = base.extend(var)
    common = DirectSum((base, base))
    f = Evaluation(right, common, ({var: 0}, {var: 1}), surjective=True)
    g = Diagonal(base, common) if twist is None else Pairing(identity_hom(base), twist)
    return FibreProduct(base, right, g, f, common, label=label, interval_var=var)


def quotient_square(left: Ring, g: RingHom, label: str) -> FibreProduct:
    """``Q[X,Y] --nu--> S1 <--g-- left``."""
    s1 = circle_ring()
    right = s1.base
    return FibreProduct(left, right, g, QuotientMap(right, s1), s1, label=label)


@lru_cache(maxsize=None)
def builtin_square(name: str, n: int | None = None) -> FibreProduct:
    s1 = circle_ring()
    if name == "circle":
        return interval_square(PolyRing(()), "X", label="circle")
    if name == "cylinder":
        return interval_square(PolyRing(("Y",)), "X", label="cylinder")
    if name == "torus":
        return interval_square(s1, "T", label="torus")
    if name == "klein":
        return interval_square(s1, "T", twist=klein_reflection(), label="klein")
    if name == "sphere":
        q = PolyRing(())
        return quotient_square(q, Substitution(q, s1, ()), "sphere")
    if name == "projective":
        return quotient_square(s1, circle_power_map(2), "projective")
    if name == "swan":
        if n is None or n < 1:
            raise UnknownSquare("swan square needs n >= 1")
        return quotient_square(s1, circle_power_map(n), f"swan({n})")
    raise UnknownSquare(f"unknown square {name!r}")


BUILTIN_NAMES = ("circle", "sphere", "cylinder", "torus", "klein", "projective", "swan")


def square_homs(square: FibreProduct) -> list[RingHom]:
    """Homs of the square together with their components, for relation checks."""
    out = []
    for h in (square.f, square.g):
        out.append(h)
        if isinstance(h, Pairing):
            out.extend([h.first, h.second])
    return out


def check_square(square: FibreProduct) -> bool:
    return all(hom_respects_relation(h) for h in square_homs(square))
