"""Ring contexts, their elements, and ring homomorphisms between them.

Four kinds of ring occur:

* :class:`PolyRing` -- ``Q[vars]``; ``PolyRing(())`` is Q itself.
* :class:`QuotientRing` -- a polynomial ring modulo one relation that is monic
  in a distinguished variable, so normal forms are plain division remainders.
* :class:`DirectSum` -- ``A1 + ... + Ak`` with componentwise operations.
* :class:`FibreProduct` -- the pull-back ``{(b, c) : f(b) = g(c)}`` of
  ``B --f--> D <--g-- C``. Payloads are stored as ``(b, c)``: the ``right``
  (B) component first, then the ``left`` (C) component.

Every ring can be extended by fresh polynomial variables (``A -> A[T]``) and
the extension can be dropped again; homomorphisms extend by acting as the
identity on the new variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import (
    GlueMismatch,
    NotSurjective,
    RingMismatch,
    UnknownVariable,
)
from .poly import Poly, parse_poly


class Ring:
    """Common interface. Subclasses implement payload-level arithmetic."""

    has_poly_payload = False

    # payload operations, overridden below
    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        raise NotImplementedError

    def coerce(self, value) -> Element:
        raise NotImplementedError

    def zero(self) -> Element:
        return self.coerce(0)

    def one(self) -> Element:
        return self.coerce(1)

    def extend(self, *names: str) -> Ring:
        raise NotImplementedError

    def drop(self, *names: str) -> Ring:
        raise NotImplementedError

    def all_vars(self) -> tuple:
        raise NotImplementedError

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self._hash_fields))
            object.__setattr__(self, "_h", h)
        return h


def _same_ring(a: Ring, b: Ring) -> bool:
    return a is b or a == b


class Element:
    """An element of a ring context. Immutable; arithmetic stays inside one ring."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, Element):
            if not _same_ring(self.ring, other.ring):
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other.value
        return self.ring.coerce(other).value

    def __add__(self, other):
        return Element(self.ring, self.ring._add(self.value, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ring, self.ring._neg(self.value))

    def __sub__(self, other):
        return Element(self.ring, self.ring._add(self.value, self.ring._neg(self._other(other))))

    def __rsub__(self, other):
        return Element(self.ring, self.ring._add(self._other(other), self.ring._neg(self.value)))

    def __mul__(self, other):
        return Element(self.ring, self.ring._mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.ring._is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Element):
            if not _same_ring(self.ring, other.ring):
                return False
            return (self - other).is_zero()
        try:
            return (self - self.ring.coerce(other)).is_zero()
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(_payload_key(self.value))

    @property
    def components(self) -> tuple:
        if isinstance(self.ring, (DirectSum, FibreProduct)):
            return self.value
        raise TypeError(f"{self.ring} has no components")

    def subs(self, mapping: Mapping, target: Ring) -> Element:
        """Substitute for extension variables and land in ``target``."""
        return target._subs_from(self, mapping)

    def __str__(self):
        v = self.value
        if isinstance(v, Poly):
            return str(v)
        return "(" + ", ".join(str(c) for c in v) + ")"

    def __repr__(self):
        return f"Element({self})"


def elem_equal(a: Element, b: Element) -> bool:
    if not _same_ring(a.ring, b.ring):
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    return a == b


def _payload_key(v):
    if isinstance(v, Poly):
        return v
    return tuple(_payload_key(c.value) for c in v)


def _as_poly(value, vars: tuple) -> Poly:
    if isinstance(value, Poly):
        return value.with_vars(vars)
    if isinstance(value, str):
        return parse_poly(value, vars)
    if isinstance(value, (int, Fraction)):
        return Poly.const(value, vars)
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


# -- polynomial and quotient rings ------------------------------------------


@dataclass(frozen=True, eq=True)
class PolyRing(Ring):
    vars: tuple = ()
    _hash_fields = ("vars",)
    has_poly_payload = True

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variables in {self.vars}")

    __hash__ = Ring.__hash__

    def all_vars(self) -> tuple:
        return self.vars

    def coerce(self, value) -> Element:
        if isinstance(value, Element):
            if _same_ring(value.ring, self):
                return value
            raise RingMismatch(f"{value.ring} vs {self}")
        return Element(self, _as_poly(value, self.vars))

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _is_zero(self, a):
        return a.is_zero()

    def var(self, name: str) -> Element:
        if name not in self.vars:
            raise UnknownVariable(name)
        return Element(self, Poly.var(name, self.vars))

    @lru_cache(maxsize=None)
    def extend(self, *names: str) -> PolyRing:
        clash = set(names) & set(self.vars)
        if clash:
            raise ValueError(f"variables {sorted(clash)} already in {self}")
        return PolyRing(self.vars + names)

    @lru_cache(maxsize=None)
    def drop(self, *names: str) -> PolyRing:
        return PolyRing(tuple(v for v in self.vars if v not in names))

    def _subs_from(self, e: Element, mapping: Mapping) -> Element:
        if not e.ring.has_poly_payload:
            raise RingMismatch(f"cannot map {e.ring} into {self}")
        return self.coerce(e.value.substitute(mapping, partial=True))

    def __str__(self):
        return "Q[" + ",".join(self.vars) + "]" if self.vars else "Q"


@dataclass(frozen=True, eq=True)
class QuotientRing(Ring):
    base: PolyRing
    relation: Poly
    distinguished: str
    _hash_fields = ("base", "relation", "distinguished")
    has_poly_payload = True

    def __post_init__(self):
        rel = self.relation.with_vars(self.base.vars)
        object.__setattr__(self, "relation", rel)
        n = rel.degree(self.distinguished)
        if n < 1 or rel.coeff_in(self.distinguished, n) != 1:
            from .errors import NotMonic

            raise NotMonic(f"relation {rel} is not monic in {self.distinguished}")

    __hash__ = Ring.__hash__

    @property
    def vars(self) -> tuple:
        return self.base.vars

    def all_vars(self) -> tuple:
        return self.base.vars

    def normal_form(self, p: Poly) -> Poly:
        if p.degree(self.distinguished) < self.relation.degree(self.distinguished):
            return p.with_vars(self.vars)
        return p.divmod(self.relation, self.distinguished)[1].with_vars(self.vars)

    def coerce(self, value) -> Element:
        if isinstance(value, Element):
            if _same_ring(value.ring, self):
                return value
            raise RingMismatch(f"{value.ring} vs {self}")
        return Element(self, self.normal_form(_as_poly(value, self.vars)))

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return self.normal_form(a * b)

    def _is_zero(self, a):
        return a.is_zero()

    def var(self, name: str) -> Element:
        if name not in self.vars:
            raise UnknownVariable(name)
        return self.coerce(Poly.var(name, self.vars))

    @lru_cache(maxsize=None)
    def extend(self, *names: str) -> QuotientRing:
        return QuotientRing(self.base.extend(*names), self.relation, self.distinguished)

    @lru_cache(maxsize=None)
    def drop(self, *names: str) -> QuotientRing:
        if set(names) & self.relation.occurring_vars():
            raise ValueError("cannot drop a variable of the relation")
        return QuotientRing(self.base.drop(*names), self.relation, self.distinguished)

    def _subs_from(self, e: Element, mapping: Mapping) -> Element:
        if not e.ring.has_poly_payload:
            raise RingMismatch(f"cannot map {e.ring} into {self}")
        return self.coerce(e.value.substitute(mapping, partial=True))

    def __str__(self):
        return f"{self.base}/({self.relation})"


# -- direct sums and fibre products -----------------------------------------


@dataclass(frozen=True, eq=True)
class DirectSum(Ring):
    components: tuple
    _hash_fields = ("components",)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    __hash__ = Ring.__hash__

    def all_vars(self) -> tuple:
        out: tuple = ()
        for c in self.components:
            out += tuple(v for v in c.all_vars() if v not in out)
        return out

    def coerce(self, value) -> Element:
        if isinstance(value, Element):
            if _same_ring(value.ring, self):
                return value
            raise RingMismatch(f"{value.ring} vs {self}")
        if isinstance(value, (tuple, list)):
            if len(value) != len(self.components):
                raise ValueError(f"expected {len(self.components)} components")
            return Element(self, tuple(r.coerce(v) for r, v in zip(self.components, value)))
        return Element(self, tuple(r.coerce(value) for r in self.components))

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        return tuple(x * y for x, y in zip(a, b))

    def _is_zero(self, a):
        return all(x.is_zero() for x in a)

    @lru_cache(maxsize=None)
    def extend(self, *names: str) -> DirectSum:
        return DirectSum(tuple(c.extend(*names) for c in self.components))

    @lru_cache(maxsize=None)
    def drop(self, *names: str) -> DirectSum:
        return DirectSum(tuple(c.drop(*names) for c in self.components))

    def _subs_from(self, e: Element, mapping: Mapping) -> Element:
        if not isinstance(e.ring, DirectSum) or len(e.ring.components) != len(self.components):
            raise RingMismatch(f"cannot map {e.ring} into {self}")
        return Element(self, tuple(c.subs(mapping, t) for c, t in zip(e.value, self.components)))

    def __str__(self):
        return " + ".join(f"({c})" for c in self.components)


@dataclass(frozen=True, eq=True)
class FibreProduct(Ring):
    """Pull-back of ``right --f--> common <--g-- left``; ``f`` is assumed surjective."""

    left: Ring
    right: Ring
    g: RingHom
    f: RingHom
    common: Ring
    label: str = field(default="", compare=False)
    interval_var: str | None = field(default=None, compare=False)
    _hash_fields = ("left", "right", "g", "f", "common")

    def __post_init__(self):
        if not _same_ring(self.f.source, self.right) or not _same_ring(self.g.source, self.left):
            raise RingMismatch("fibre product homs must start at right and left rings")
        if not _same_ring(self.f.target, self.common) or not _same_ring(self.g.target, self.common):
            raise RingMismatch("fibre product homs must both target the common ring")

    __hash__ = Ring.__hash__

    def all_vars(self) -> tuple:
        out = self.right.all_vars()
        return out + tuple(v for v in self.left.all_vars() if v not in out)

    def make(self, right, left) -> Element:
        """Build ``(right, left)`` after checking ``f(right) == g(left)`` exactly."""
        b = self.right.coerce(right)
        c = self.left.coerce(left)
        fb, gc = self.f.apply(b), self.g.apply(c)
        if fb != gc:
            raise GlueMismatch(f"f(b) = {fb} but g(c) = {gc}", fb, gc)
        return Element(self, (b, c))

    def coerce(self, value) -> Element:
        if isinstance(value, Element):
            if _same_ring(value.ring, self):
                return value
            raise RingMismatch(f"{value.ring} vs {self}")
        if isinstance(value, (tuple, list)):
            return self.make(*value)
        return Element(self, (self.right.coerce(value), self.left.coerce(value)))

    def _add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def _neg(self, a):
        return (-a[0], -a[1])

    def _mul(self, a, b):
        return (a[0] * b[0], a[1] * b[1])

    def _is_zero(self, a):
        return a[0].is_zero() and a[1].is_zero()

    @lru_cache(maxsize=None)
    def extend(self, *names: str) -> FibreProduct:
        return FibreProduct(
            self.left.extend(*names),
            self.right.extend(*names),
            self.g.extend(*names),
            self.f.extend(*names),
            self.common.extend(*names),
            label=f"{self.label}[{','.join(names)}]" if self.label else "",
            interval_var=self.interval_var,
        )

    @lru_cache(maxsize=None)
    def drop(self, *names: str) -> FibreProduct:
        return FibreProduct(
            self.left.drop(*names),
            self.right.drop(*names),
            self.g.drop(*names),
            self.f.drop(*names),
            self.common.drop(*names),
            label=self.label.split("[")[0],
            interval_var=self.interval_var,
        )

    def _subs_from(self, e: Element, mapping: Mapping) -> Element:
        if not isinstance(e.ring, FibreProduct):
            raise RingMismatch(f"cannot map {e.ring} into {self}")
        b, c = e.value
        return self.make(b.subs(mapping, self.right), c.subs(mapping, self.left))

    def __str__(self):
        return self.label or f"{self.right} x_{self.common} {self.left}"


def fibre_make(square: FibreProduct, right, left) -> Element:
    return square.make(right, left)


# -- homomorphisms ----------------------------------------------------------


class RingHom:
    """Base class; ``apply`` checks the source ring, ``_apply`` does the work."""

    source: Ring
    target: Ring
    surjective: bool

    def apply(self, a) -> Element:
        if not isinstance(a, Element):
            a = self.source.coerce(a)
        elif not _same_ring(a.ring, self.source):
            raise RingMismatch(f"{a.ring} is not the source {self.source}")
        return self._apply(a)

    __call__ = apply

    def apply_poly(self, p: Poly) -> Element:
        """Apply to a raw polynomial over the source's variables (no normal form first)."""
        raise NotImplementedError(type(self).__name__)

    def extend(self, *names: str) -> RingHom:
        return replace(self, source=self.source.extend(*names), target=self.target.extend(*names))

    def drop(self, *names: str) -> RingHom:
        return replace(self, source=self.source.drop(*names), target=self.target.drop(*names))

    def __hash__(self):
        return Ring.__hash__(self)


@dataclass(frozen=True, eq=True)
class Substitution(RingHom):
    source: Ring
    target: Ring
    images: tuple = ()  # ((var, Poly), ...); unlisted variables map to themselves
    surjective: bool = False
    _hash_fields = ("source", "target", "images", "surjective")

    def __post_init__(self):
        imgs = self.images.items() if isinstance(self.images, Mapping) else self.images
        object.__setattr__(self, "images", tuple(sorted((v, p) for v, p in imgs)))

    __hash__ = RingHom.__hash__

    @property
    def image_map(self) -> dict:
        return dict(self.images)

    def _apply(self, a):
        return self.apply_poly(a.value)

    def apply_poly(self, p):
        return self.target.coerce(p.substitute(self.image_map, partial=True))


@dataclass(frozen=True, eq=True)
class Evaluation(RingHom):
    source: Ring
    target: Ring  # a DirectSum when there is more than one point
    points: tuple = ()  # (((var, Fraction), ...), ...)
    surjective: bool = False
    _hash_fields = ("source", "target", "points", "surjective")

    def __post_init__(self):
        pts = []
        for pt in self.points:
            items = pt.items() if isinstance(pt, Mapping) else pt
            pts.append(tuple(sorted((v, Fraction(c)) for v, c in items)))
        object.__setattr__(self, "points", tuple(pts))

    __hash__ = RingHom.__hash__

    def _targets(self) -> tuple:
        if len(self.points) == 1:
            return (self.target,)
        return self.target.components

    def _apply(self, a):
        return self.apply_poly(a.value)

    def apply_poly(self, p):
        vals = [t.coerce(p.substitute(dict(pt), partial=True)) for pt, t in zip(self.points, self._targets())]
        if len(self.points) == 1:
            return vals[0]
        return Element(self.target, tuple(vals))


@dataclass(frozen=True, eq=True)
class QuotientMap(RingHom):
    source: Ring
    target: Ring
    surjective: bool = True
    _hash_fields = ("source", "target", "surjective")

    __hash__ = RingHom.__hash__

    def _apply(self, a):
        return self.target.coerce(a.value)

    def apply_poly(self, p):
        return self.target.coerce(p)


@dataclass(frozen=True, eq=True)
class Diagonal(RingHom):
    source: Ring
    target: Ring
    surjective: bool = False
    _hash_fields = ("source", "target", "surjective")

    __hash__ = RingHom.__hash__

    def _apply(self, a):
        return Element(self.target, tuple(t.coerce(a) for t in self.target.components))

    def apply_poly(self, p):
        return self._apply(self.source.coerce(p))


@dataclass(frozen=True, eq=True)
class Pairing(RingHom):
    first: RingHom
    second: RingHom
    surjective: bool = False
    _hash_fields = ("first", "second", "surjective")

    __hash__ = RingHom.__hash__

    @property
    def source(self):
        return self.first.source

    @property
    def target(self):
        return DirectSum((self.first.target, self.second.target))

    def _apply(self, a):
        return Element(self.target, (self.first._apply(a), self.second._apply(a)))

    def apply_poly(self, p):
        return Element(self.target, (self.first.apply_poly(p), self.second.apply_poly(p)))

    def extend(self, *names):
        return replace(self, first=self.first.extend(*names), second=self.second.extend(*names))

    def drop(self, *names):
        return replace(self, first=self.first.drop(*names), second=self.second.drop(*names))


@dataclass(frozen=True, eq=True)
class Composite(RingHom):
    """``then`` after ``first``."""

    first: RingHom
    then: RingHom
    surjective: bool = False
    _hash_fields = ("first", "then", "surjective")

    __hash__ = RingHom.__hash__

    def __post_init__(self):
        if not _same_ring(self.first.target, self.then.source):
            raise RingMismatch("composite homs do not chain")

    @property
    def source(self):
        return self.first.source

    @property
    def target(self):
        return self.then.target

    def _apply(self, a):
        return self.then._apply(self.first._apply(a))

    def apply_poly(self, p):
        return self.then.apply(self.first.apply_poly(p))

    def extend(self, *names):
        return replace(self, first=self.first.extend(*names), then=self.then.extend(*names))

    def drop(self, *names):
        return replace(self, first=self.first.drop(*names), then=self.then.drop(*names))


def identity_hom(ring: Ring) -> Substitution:
    return Substitution(ring, ring, (), surjective=True)


def hom_apply(h: RingHom, a: Element) -> Element:
    return h.apply(a)


def hom_respects_relation(h: RingHom) -> bool:
    """Whether the source relation maps to zero, i.e. the substitution is well defined."""
    src = h.source
    if not isinstance(src, QuotientRing):
        return True
    return h.apply_poly(src.relation).is_zero()


def hom_preimage(h: RingHom, d: Element) -> Element:
    """A fixed section of a surjective homomorphism.

    Quotient maps lift normal forms verbatim. An evaluation at two values
    ``a, b`` of one variable ``V`` sends ``(u, v)`` to the linear interpolant
    ``u + (v - u)(V - a)/(b - a)``; a one-point evaluation lifts constants.
    """
    if not h.surjective:
        raise NotSurjective(f"{type(h).__name__} is not marked surjective")
    if not isinstance(d, Element):
        d = h.target.coerce(d)
    elif not _same_ring(d.ring, h.target):
        raise RingMismatch(f"{d.ring} is not the target {h.target}")
    if isinstance(h, QuotientMap):
        return h.source.coerce(d.value)
    if isinstance(h, Substitution) and not h.images and _same_ring(h.source, h.target):
        return d
    if isinstance(h, Evaluation):
        names = {v for pt in h.points for v, _ in pt}
        if len(names) != 1 or any(len(pt) != 1 for pt in h.points):
            raise NotSurjective("evaluation section needs points in a single variable")
        (var,) = names
        if len(h.points) == 1:
            return h.source.coerce(d.value)
        if len(h.points) == 2:
            (_, a), = h.points[0]
            (_, b), = h.points[1]
            u, v = (c.value for c in d.value)
            x = Poly.var(var)
            return h.source.coerce(u + (v - u) * (x - a) * (1 / (b - a)))
    raise NotSurjective(f"no section available for {type(h).__name__}")
