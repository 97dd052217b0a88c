"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is an immutable map from monomials to nonzero
:class:`~fractions.Fraction` coefficients, together with an ordered tuple of
variable names. Monomials are stored as tuples of ``(name, exponent)`` pairs
sorted by name, so two polynomials compare equal exactly when their term maps
agree; the variable tuple only fixes the printing order (graded lex).

Polynomial text grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

Implicit multiplication (``2X``) is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import NotMonic, PolySyntaxError, UnknownVariable

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable name
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _union(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return a + tuple(v for v in b if v not in a)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


class Poly:
    __slots__ = ("_terms", "vars", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), vars: Iterable[str] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict = {}
        for mono, c in items:
            if isinstance(mono, Mapping):
                mono = mono.items()
            key = tuple(sorted((v, int(e)) for v, e in mono if e))
            if any(e < 0 for _, e in key):
                raise ValueError("negative exponent")
            c = _as_fraction(c)
            if c:
                c = out.get(key, 0) + c
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        vs = tuple(vars)
        seen = {v for m in out for v, _ in m}
        missing = sorted(seen - set(vs))
        self._terms = out
        self.vars = vs + tuple(missing)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, vars: tuple) -> Poly:
        p = object.__new__(cls)
        p._terms = terms
        p.vars = vars
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar, vars: Iterable[str] = ()) -> Poly:
        c = _as_fraction(c)
        return cls._raw({ONE_MONO: c} if c else {}, tuple(vars))

    @classmethod
    def var(cls, name: str, vars: Iterable[str] | None = None) -> Poly:
        vs = tuple(vars) if vars is not None else (name,)
        if name not in vs:
            vs = vs + (name,)
        return cls._raw({((name, 1),): Fraction(1)}, vs)

    # -- introspection -------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONO, Fraction(0))

    def occurring_vars(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); ``-1`` for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e for _, e in m) for m in self._terms)
        return max(dict(m).get(var, 0) for m in self._terms)

    def coeff_in(self, var: str, k: int) -> Poly:
        """Coefficient of ``var**k``, as a polynomial in the remaining variables."""
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            if d.get(var, 0) == k:
                d.pop(var, None)
                out[tuple(sorted(d.items()))] = c
        return Poly._raw(out, self.vars)

    def with_vars(self, vars: Iterable[str]) -> Poly:
        vs = tuple(vars)
        extra = self.occurring_vars() - set(vs)
        if extra:
            raise UnknownVariable(f"variables {sorted(extra)} not in {list(vs)}")
        return Poly._raw(self._terms, vs)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly.const(_as_fraction(other), self.vars)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, _union(self.vars, other.vars))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({m: -c for m, c in self._terms.items()}, self.vars)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly._raw({}, self.vars)
            return Poly._raw({m: c * v for m, v in self._terms.items()}, self.vars)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(out, _union(self.vars, other.vars))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            return self._terms == Poly.const(_as_fraction(other))._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution and evaluation ------------------------------------

    def substitute(self, assignment: Mapping[str, Poly | Scalar], partial: bool = False) -> Poly:
        """Simultaneous substitution of polynomials for variables.

        With ``partial=False`` every occurring variable needs an image.
        """
        images = {v: (p if isinstance(p, Poly) else Poly.const(p)) for v, p in assignment.items()}
        occurring = self.occurring_vars()
        if not partial:
            missing = occurring - images.keys()
            if missing:
                raise UnknownVariable(f"no image for {sorted(missing)}")
        out_vars: tuple = ()
        for v in self.vars:
            if v in images:
                out_vars = _union(out_vars, images[v].vars)
            else:
                out_vars = _union(out_vars, (v,))
        for p in images.values():
            out_vars = _union(out_vars, p.vars)
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] ** e
            return powers[key]

        result: dict = {}
        for m, c in self._terms.items():
            kept = tuple((v, e) for v, e in m if v not in images)
            term = Poly._raw({kept: c}, out_vars)
            for v, e in m:
                if v in images:
                    term = term * power(v, e)
            for mm, cc in term._terms.items():
                s = result.get(mm, 0) + cc
                if s:
                    result[mm] = s
                else:
                    del result[mm]
        return Poly._raw(result, out_vars)

    def evaluate(self, point: Mapping):
        """Evaluate at a point.

        Exact (a ``Fraction``) when every value is an int or Fraction; otherwise
        float arithmetic is used, and numpy arrays evaluate elementwise.
        """
        missing = self.occurring_vars() - point.keys()
        if missing:
            raise UnknownVariable(f"no value for {sorted(missing)}")
        exact = all(isinstance(point[v], (int, Fraction)) for v in self.occurring_vars())
        total = Fraction(0) if exact else 0.0
        for m, c in self._terms.items():
            val = c if exact else float(c)
            for v, e in m:
                val = val * point[v] ** e
            total = total + val
        return total

    # -- division ------------------------------------------------------

    def divmod(self, d: Poly, var: str) -> tuple[Poly, Poly]:
        """Division by ``d``, which must be monic in ``var``.

        Returns ``(q, r)`` with ``self == q*d + r`` and ``deg_var(r) < deg_var(d)``.
        """
        n = d.degree(var)
        if n < 0 or d.coeff_in(var, n) != 1:
            raise NotMonic(f"{d} is not monic in {var}")
        x = Poly.var(var)
        q = Poly._raw({}, _union(self.vars, d.vars))
        r = self
        while (k := r.degree(var)) >= n:
            t = r.coeff_in(var, k) * x ** (k - n)
            q = q + t
            r = r - t * d
        return q, Poly._raw(r._terms, _union(self.vars, d.vars))

    # -- text ----------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms in graded-lex descending order with respect to ``self.vars``."""
        order = self.vars

        def key(item):
            d = dict(item[0])
            exps = tuple(d.get(v, 0) for v in order)
            return (sum(exps), exps)

        return sorted(self._terms.items(), key=key, reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, vars={self.vars!r})"


def _mono_str(m: Monomial, order: tuple) -> str:
    d = dict(m)
    parts = []
    for v in order:
        e = d.get(v, 0)
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p._terms:
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        ms = _mono_str(m, p.vars)
        if not ms:
            s = str(c)
        elif c == 1:
            s = ms
        elif c == -1:
            s = "-" + ms
        else:
            s = f"{c}*{ms}"
        pieces.append(s)
    out = pieces[0]
    for s in pieces[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.lastindex is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", len(text[:start].encode()), text)
            tokens.append(("op", ch, start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, vars: tuple | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = vars
        self.seen: list = []

    def error(self, msg: str, tok=None):
        if tok is None:
            tok = self.peek()
        char_pos = tok[2] if tok else len(self.text)
        raise PolySyntaxError(msg, len(self.text[:char_pos].encode()), self.text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def at_op(self, ch: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] == ch

    def parse(self) -> Poly:
        if not self.tokens:
            self.error("empty expression")
        p = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            if tok[0] in ("name", "int") or (tok[0] == "op" and tok[1] == "("):
                self.error("implicit multiplication is not allowed; write '*'")
            self.error(f"unexpected {tok[1]!r}")
        base = self.vars if self.vars is not None else tuple(self.seen)
        return p.with_vars(base)

    def expr(self) -> Poly:
        p = self.term()
        while self.at_op("+") or self.at_op("-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.at_op("*"):
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        if self.at_op("-"):
            self.take()
            return -self.factor()
        if self.at_op("+"):
            self.take()
            return self.factor()
        p = self.atom()
        if self.at_op("^"):
            self.take()
            tok = self.peek()
            if tok is None or tok[0] != "int":
                self.error("'^' needs a non-negative integer exponent")
            self.take()
            p = p ** int(tok[1])
        return p

    def atom(self) -> Poly:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        kind, val, _ = tok
        if kind == "int":
            self.take()
            c = Fraction(int(val))
            if self.at_op("/"):
                self.take()
                den = self.peek()
                if den is None or den[0] != "int":
                    self.error("'/' is only allowed between integer literals")
                self.take()
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                c = c / int(den[1])
            return Poly.const(c)
        if kind == "name":
            self.take()
            if self.vars is not None and val not in self.vars:
                raise UnknownVariable(f"unknown variable {val!r} (declared: {list(self.vars)})")
            if val not in self.seen:
                self.seen.append(val)
            return Poly.var(val)
        if val == "(":
            self.take()
            p = self.expr()
            if not self.at_op(")"):
                self.error("expected ')'")
            self.take()
            return p
        self.error(f"unexpected {val!r}")


def parse_poly(text: str, vars: Iterable[str] | None = None) -> Poly:
    """Parse polynomial text. If ``vars`` is None, variables are taken in order of appearance."""
    return _Parser(text, tuple(vars) if vars is not None else None).parse()


def poly_arith(lhs: Poly, rhs: Poly, op: str) -> Poly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")
