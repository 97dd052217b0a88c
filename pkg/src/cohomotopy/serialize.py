"""JSON documents for rings, matrices and witnesses.

Ring documents::

    {"type": "poly", "vars": ["Y"]}
    {"type": "quotient", "vars": ["X", "Y"], "relation": "X^2 + Y^2 - 1", "distinguished": "X"}
    {"type": "sum", "components": [<ring>, <ring>]}
    {"type": "builtin", "name": "klein", "n": null, "extend": ["T"]}

Fibre products are only serialized as (extensions of) built-in squares.
Compact ring strings are accepted wherever a ring document is: ``Q``,
``Q[Y]``, ``S1``, ``S1[T]``, ``klein``, ``swan(3)``, ``torus[T]``.

Matrices are row-major arrays of polynomial strings; an entry over a direct
sum or fibre product is a list of its component entries.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .errors import InputError, UnknownSquare
from .matrix import ElemFactor, Matrix, SLMatrix, _entry_strings
from .poly import format_poly, parse_poly
from .rings import DirectSum, FibreProduct, PolyRing, QuotientRing, Ring
from .squares import builtin_square, circle_ring

_SPEC = re.compile(r"^\s*([A-Za-z0-9_]+)(?:\((\d+)\))?\s*(?:\[([A-Za-z0-9_,\s]*)\])?\s*$")


def parse_ring_spec(text: str) -> Ring:
    m = _SPEC.match(text)
    if not m:
        raise InputError(f"cannot parse ring {text!r}")
    name, n, ext = m.group(1), m.group(2), m.group(3)
    names = tuple(v.strip() for v in ext.split(",") if v.strip()) if ext else ()
    if name == "Q":
        return PolyRing(names)
    if name == "S1":
        return circle_ring().extend(*names) if names else circle_ring()
    try:
        sq = builtin_square(name, int(n) if n else None)
    except UnknownSquare as e:
        raise InputError(str(e)) from e
    return sq.extend(*names) if names else sq


def ring_to_doc(ring: Ring) -> dict:
    if isinstance(ring, PolyRing):
        return {"type": "poly", "vars": list(ring.vars)}
    if isinstance(ring, QuotientRing):
        return {
            "type": "quotient",
            "vars": list(ring.vars),
            "relation": format_poly(ring.relation),
            "distinguished": ring.distinguished,
        }
    if isinstance(ring, DirectSum):
        return {"type": "sum", "components": [ring_to_doc(c) for c in ring.components]}
    if isinstance(ring, FibreProduct):
        label = ring.label
        m = re.match(r"^([a-z]+)(?:\((\d+)\))?(?:\[([A-Za-z0-9_,]*)\])?$", label or "")
        if not m:
            raise InputError(f"only built-in squares serialize, not {ring}")
        name, n, ext = m.groups()
        doc = {"type": "builtin", "name": name, "n": int(n) if n else None}
        if ext:
            doc["extend"] = ext.split(",")
        return doc
    raise InputError(f"cannot serialize ring {ring!r}")


def ring_from_doc(doc: Any) -> Ring:
    if isinstance(doc, str):
        return parse_ring_spec(doc)
    if not isinstance(doc, dict) or "type" not in doc:
        raise InputError(f"bad ring document {doc!r}")
    kind = doc["type"]
    if kind == "poly":
        return PolyRing(tuple(doc.get("vars", ())))
    if kind == "quotient":
        base = PolyRing(tuple(doc["vars"]))
        return QuotientRing(base, parse_poly(doc["relation"], base.vars), doc["distinguished"])
    if kind == "sum":
        return DirectSum(tuple(ring_from_doc(c) for c in doc["components"]))
    if kind == "builtin":
        try:
            sq = builtin_square(doc["name"], doc.get("n"))
        except UnknownSquare as e:
            raise InputError(str(e)) from e
        ext = tuple(doc.get("extend") or ())
        return sq.extend(*ext) if ext else sq
    raise InputError(f"unknown ring type {kind!r}")


def matrix_to_doc(m: Matrix) -> list:
    return m.to_strings()


def _entry(x):
    if isinstance(x, list):
        return tuple(_entry(c) for c in x)
    if isinstance(x, (int, str)):
        return x
    raise InputError(f"bad matrix entry {x!r}")


def matrix_from_doc(doc: Any, ring: Ring, sl: bool = True) -> Matrix:
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise InputError("a matrix is a list of rows")
    rows = [[_entry(x) for x in r] for r in doc]
    cls = SLMatrix if sl else Matrix
    return cls(ring, rows)


def element_to_doc(e):
    return _entry_strings(e)


def factors_to_doc(factors) -> list:
    return [{"i": f.i, "j": f.j, "r": _entry_strings(f.r)} for f in factors]


def factors_from_doc(doc: Any, ring: Ring) -> list[ElemFactor]:
    try:
        return [ElemFactor(int(f["i"]), int(f["j"]), ring.coerce(_entry(f["r"]))) for f in doc]
    except (KeyError, TypeError) as e:
        raise InputError(f"bad factor list: {e}") from e


def load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from e


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def require(doc: dict, *keys: str):
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError(f"missing fields {missing}")
    return [doc[k] for k in keys]
