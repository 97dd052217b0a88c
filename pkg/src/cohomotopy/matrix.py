"""Square matrices over ring contexts, SL membership and elementary factorization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import NotAUnit, NotSL, RingMismatch, ShapeError, UnsupportedRing
from .poly import Poly
from .rings import DirectSum, Element, FibreProduct, PolyRing, Ring, _same_ring


class Matrix:
    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows: Iterable[Iterable]):
        rows = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ShapeError("matrix must be square and non-empty")
        self.ring = ring
        self.rows = rows

    @classmethod
    def _raw(cls, ring, rows):
        m = object.__new__(cls)
        m.ring = ring
        m.rows = rows
        return m

    @classmethod
    def identity(cls, ring: Ring, n: int = 2):
        one, zero = ring.one(), ring.zero()
        return cls._raw(ring, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def elementary(cls, ring: Ring, n: int, i: int, j: int, r) -> Matrix:
        """``E_ij(r)`` with 1-based indices."""
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ShapeError(f"bad elementary indices ({i}, {j}) for n = {n}")
        r = ring.coerce(r)
        one, zero = ring.one(), ring.zero()
        rows = [[one if a == b else zero for b in range(n)] for a in range(n)]
        rows[i - 1][j - 1] = r
        return cls._raw(ring, tuple(tuple(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Element:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def _check(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if not _same_ring(self.ring, other.ring):
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.n != other.n:
            raise ShapeError("size mismatch")

    def _mul_rows(self, other: Matrix):
        n = self.n
        b = other.rows
        out = []
        for row in self.rows:
            new = []
            for j in range(n):
                acc = row[0] * b[0][j]
                for k in range(1, n):
                    acc = acc + row[k] * b[k][j]
                new.append(acc)
            out.append(tuple(new))
        return tuple(out)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        rows = self._mul_rows(other)
        if isinstance(self, SLMatrix) and isinstance(other, SLMatrix):
            return SLMatrix._raw(self.ring, rows)
        return Matrix._raw(self.ring, rows)

    def apply_column(self, v: Sequence) -> tuple:
        v = [self.ring.coerce(x) for x in v]
        out = []
        for row in self.rows:
            acc = self.ring.zero()
            for a, b in zip(row, v):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def det(self) -> Element:
        return _det(self.rows)

    def adjugate(self) -> Matrix:
        n = self.n
        if n == 1:
            return Matrix._raw(self.ring, ((self.ring.one(),),))
        rows = self.rows
        cof = []
        for i in range(n):
            crow = []
            for j in range(n):
                minor = tuple(tuple(r[c] for c in range(n) if c != j) for k, r in enumerate(rows) if k != i)
                d = _det(minor)
                crow.append(d if (i + j) % 2 == 0 else -d)
            cof.append(crow)
        return Matrix._raw(self.ring, tuple(tuple(cof[j][i] for j in range(n)) for i in range(n)))

    def inverse(self) -> Matrix:
        if not isinstance(self, SLMatrix) and self.det() != 1:
            raise NotSL("only determinant-one matrices are inverted")
        adj = self.adjugate()
        return SLMatrix._raw(self.ring, adj.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return _same_ring(self.ring, other.ring) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.ring, self.n)

    def map(self, fn: Callable[[Element], Element], ring: Ring) -> Matrix:
        rows = tuple(tuple(ring.coerce(fn(x)) for x in r) for r in self.rows)
        return type(self)._raw(ring, rows)

    def subs(self, target: Ring, mapping: Mapping) -> Matrix:
        """Substitute for (extension) variables entrywise; the result lives over ``target``."""
        return self.map(lambda e: e.subs(mapping, target), target)

    def apply(self, hom) -> Matrix:
        return self.map(hom.apply, hom.target)

    def coerce_to(self, ring: Ring) -> Matrix:
        """Re-read entries over a ring with more variables (e.g. ``A[T] -> A[X,T]``)."""
        return self.map(lambda e: ring.coerce(e.value), ring)

    def to_sl(self) -> SLMatrix:
        return SLMatrix(self.ring, self.rows)

    def components(self) -> list:
        """Split a matrix over a direct sum or fibre product into component matrices."""
        if not isinstance(self.ring, (DirectSum, FibreProduct)):
            raise TypeError(f"{self.ring} has no components")
        rings = self.ring.components if isinstance(self.ring, DirectSum) else (self.ring.right, self.ring.left)
        cls = type(self)
        return [
            cls._raw(r, tuple(tuple(x.value[k] for x in row) for row in self.rows)) for k, r in enumerate(rings)
        ]

    @classmethod
    def from_components(cls, ring: Ring, mats: Sequence[Matrix]) -> Matrix:
        n = mats[0].n
        rows = tuple(
            tuple(ring.coerce(tuple(m.rows[i][j] for m in mats)) for j in range(n)) for i in range(n)
        )
        return cls._raw(ring, rows)

    def to_strings(self) -> list:
        return [[_entry_strings(x) for x in r] for r in self.rows]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


def _entry_strings(x: Element):
    if isinstance(x.value, Poly):
        return str(x.value)
    return [_entry_strings(c) for c in x.value]


def _det(rows) -> Element:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    total = None
    for j in range(n):
        minor = tuple(tuple(r[c] for c in range(n) if c != j) for r in rows[1:])
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


class SLMatrix(Matrix):
    """A matrix whose determinant is exactly one (checked on construction)."""

    __slots__ = ()

    def __init__(self, ring: Ring, rows: Iterable[Iterable]):
        super().__init__(ring, rows)
        d = self.det()
        if d != 1:
            raise NotSL(f"determinant is {d}, not 1")

    def map(self, fn, ring):
        # only used with ring homomorphisms and substitutions, which preserve det = 1
        rows = tuple(tuple(ring.coerce(fn(x)) for x in r) for r in self.rows)
        return SLMatrix._raw(ring, rows)


def identity(ring: Ring, n: int = 2) -> SLMatrix:
    return SLMatrix._raw(ring, Matrix.identity(ring, n).rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_det(a: Matrix) -> Element:
    return a.det()


def sl_inverse(a: Matrix) -> SLMatrix:
    return a.inverse()


@dataclass(frozen=True)
class ElemFactor:
    """``E_ij(r)``, 1-based."""

    i: int
    j: int
    r: Element

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise ShapeError(f"bad elementary indices ({self.i}, {self.j})")

    def matrix(self, n: int, ring: Ring | None = None) -> SLMatrix:
        ring = ring or self.r.ring
        return SLMatrix._raw(ring, Matrix.elementary(ring, n, self.i, self.j, self.r).rows)

    def shifted(self, k: int = 1) -> ElemFactor:
        return ElemFactor(self.i + k, self.j + k, self.r)


def elementary(ring: Ring, n: int, i: int, j: int, r) -> SLMatrix:
    return ElemFactor(i, j, ring.coerce(r)).matrix(n, ring)


def elementary_assemble(factors: Sequence[ElemFactor], n: int, ring: Ring) -> SLMatrix:
    out = identity(ring, n)
    for fac in factors:
        if fac.i > n or fac.j > n:
            raise ShapeError(f"factor indices ({fac.i}, {fac.j}) exceed n = {n}")
        out = out @ fac.matrix(n, ring)
    return out


def whitehead_diag(u: Element) -> list[ElemFactor]:
    """Four elementary factors with product ``diag(u, 1/u)``.

    ``E12(1) E21(u-1) E12(-1/u) E21(u-u^2)``; for ``u = 1`` the middle entries
    vanish and the product is the identity.
    """
    ring = u.ring
    c = _unit_value(u)
    one = Fraction(1)
    return [
        ElemFactor(1, 2, ring.coerce(one)),
        ElemFactor(2, 1, ring.coerce(c - 1)),
        ElemFactor(1, 2, ring.coerce(-1 / c)),
        ElemFactor(2, 1, ring.coerce(c - c * c)),
    ]


def _unit_value(u: Element) -> Fraction:
    p = u.value
    if not isinstance(p, Poly) or not p.is_constant() or p.is_zero():
        raise NotAUnit(f"{u} is not a nonzero rational constant")
    return p.constant_term()


def _univariate(ring: Ring) -> str | None:
    if not isinstance(ring, PolyRing) or len(ring.vars) > 1:
        raise UnsupportedRing(f"Euclidean factorization needs Q or Q[v], got {ring}")
    return ring.vars[0] if ring.vars else None


def _quotient(num: Poly, den: Poly, var: str | None) -> Poly:
    """Polynomial quotient over Q (field coefficients, so no monicity needed)."""
    if var is None:
        return Poly.const(num.constant_term() / den.constant_term())
    n = den.degree(var)
    lead = den.coeff_in(var, n).constant_term()
    q, _ = num.divmod(den * (1 / lead), var)
    return q * (1 / lead)


def sl2_factor_euclidean(a: Matrix) -> list[ElemFactor]:
    """Factor ``a`` in ``SL2(Q)`` or ``SL2(Q[v])`` into elementary matrices.

    Row operations reduce the first column by Euclidean division (on equal
    degrees the (2,1) entry is reduced by the (1,1) entry) until one entry
    vanishes. A column ``(0, u)`` is turned into ``(1, 0)`` with two more row
    operations; a column ``(u, 0)`` with ``u != 1`` is normalised by the
    Whitehead factors of ``diag(u, 1/u)``. What is left is ``E12(q)``.
    """
    if a.n != 2:
        raise ShapeError("sl2_factor_euclidean needs a 2x2 matrix")
    ring = a.ring
    var = _univariate(ring)
    if a.det() != 1:
        raise NotSL("input is not in SL2")

    def deg(p: Poly) -> int:
        return p.degree(var) if var else (0 if p else -1)

    (p, q), (r, s) = ((x.value for x in row) for row in a.rows)
    ops: list[ElemFactor] = []  # left multiplications, in order applied: L = ops[-1] ... ops[0]

    def row_op(i, j, k: Poly):
        nonlocal p, q, r, s
        ops.append(ElemFactor(i, j, ring.coerce(k)))
        if i == 1:
            p, q = p + k * r, q + k * s
        else:
            r, s = r + k * p, s + k * q

    while p and r:
        if deg(r) >= deg(p):
            row_op(2, 1, -_quotient(r, p, var))
        else:
            row_op(1, 2, -_quotient(p, r, var))

    tail: list[ElemFactor] = []
    if not p:
        u = _unit_value(ring.coerce(r))
        row_op(1, 2, Poly.const(1 / u))
        row_op(2, 1, Poly.const(-u))
    else:
        u = _unit_value(ring.coerce(p))
        if u != 1:
            tail = whitehead_diag(ring.coerce(u))
            # diag(1/u, u) applied on the left normalises the column to (1, 0)
            p, q, s = p * (1 / u), q * (1 / u), s * u
    # now (p, r) == (1, 0) and s == 1
    # a = L^-1 (tail) E12(q) and L^-1 = ops[0]^-1 ... ops[-1]^-1
    factors = [ElemFactor(f.i, f.j, -f.r) for f in ops] + tail
    if q:
        factors.append(ElemFactor(1, 2, ring.coerce(q)))
    return factors


def embed_sl2_in_sl3(lam: Matrix, top: tuple = (0, 0)) -> SLMatrix:
    """``[[1, d12, d13], [0, lam], [0, lam]]``."""
    if lam.n != 2:
        raise ShapeError("embedding needs a 2x2 block")
    ring = lam.ring
    d12, d13 = (ring.coerce(x) for x in top)
    zero, one = ring.zero(), ring.one()
    rows = (
        (one, d12, d13),
        (zero, lam.rows[0][0], lam.rows[0][1]),
        (zero, lam.rows[1][0], lam.rows[1][1]),
    )
    if isinstance(lam, SLMatrix):
        return SLMatrix._raw(ring, rows)
    return SLMatrix(ring, rows)


def extract_block(m: Matrix) -> tuple[SLMatrix, tuple]:
    """Inverse of :func:`embed_sl2_in_sl3`: first column must be ``e1``."""
    if m.n != 3:
        raise ShapeError("block extraction needs a 3x3 matrix")
    col = m.column(0)
    if not (col[0] == 1 and col[1].is_zero() and col[2].is_zero()):
        raise ShapeError(f"first column is {tuple(str(c) for c in col)}, not (1, 0, 0)")
    lam = SLMatrix(m.ring, (m.rows[1][1:], m.rows[2][1:]))
    return lam, (m.rows[0][1], m.rows[0][2])
