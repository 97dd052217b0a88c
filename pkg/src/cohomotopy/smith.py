"""Smith normal form of small integer matrices and the obstruction quotient.

``obstruction_group`` computes ``Z^k / <generators>`` where the generators
are the winding coordinates of the images of ``Gamma(B)`` and ``Gamma(C)``
in ``Gamma(D)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple  # nonzero d_1 | d_2 | ... followed by zeros, length min(rows, cols)
    left: tuple  # U, unimodular rows x rows
    right: tuple  # V, unimodular cols x cols; U m V = diag


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U, V = _eye(rows), _eye(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for r in a:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            bad = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                add_row(t, i, -q)
                if a[i][t]:
                    bad = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                add_col(t, j, -q)
                if a[t][j]:
                    bad = True
            if not bad:
                # divisibility: fold any entry not divisible by the pivot into row t
                rest = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p]
                if not rest:
                    break
                i, _ = rest[0]
                add_row(i, t, 1)
                continue
            nz = [(abs(a[i][t]), i, None) for i in range(t, rows) if a[i][t]]
            nz += [(abs(a[t][j]), None, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(nz, key=lambda x: x[0])
            if i is not None:
                swap_rows(t, i)
            else:
                swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(a[k][k] for k in range(min(rows, cols)))
    return SmithForm(diag, tuple(map(tuple, U)), tuple(map(tuple, V)))


def invariant_factors(generators: Sequence[Sequence[int]], k: int | None = None) -> tuple:
    """Invariant factors of ``Z^k / <generators>`` (rows are generators).

    Length ``k``; a ``0`` stands for a free summand ``Z``.
    """
    gens = [list(g) for g in generators]
    if k is None:
        k = len(gens[0]) if gens else 0
    if not gens:
        return (0,) * k
    d = [x for x in smith_normal_form(gens).diagonal if x]
    return tuple(d) + (0,) * (k - len(d))


def group_label(factors: Sequence[int]) -> str:
    parts = []
    free = sum(1 for d in factors if d == 0)
    parts += [f"Z_{d}" for d in factors if d > 1]
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ObstructionGroup:
    generators: tuple
    coordinates: int
    invariant_factors: tuple
    label: str


def obstruction_from_generators(generators: Sequence[Sequence[int]], k: int | None = None) -> ObstructionGroup:
    gens = tuple(tuple(int(x) for x in g) for g in generators)
    if k is None:
        k = len(gens[0]) if gens else 0
    if any(len(g) != k for g in gens):
        raise ValueError("generators must all have the coordinate count")
    inv = invariant_factors(gens, k)
    return ObstructionGroup(gens, k, inv, group_label(inv))


def obstruction_group(square=None, generators: Sequence[Sequence[int]] | None = None, k: int | None = None) -> ObstructionGroup:
    """``Gamma(D) / im Gamma(f) im Gamma(g)`` in winding coordinates.

    Either pass the generators directly or a square; for a square the
    generators are the winding coordinates of ``f`` and ``g`` applied to the
    standard generator ``tau`` of every circle-ring source (polynomial rings
    over Q contribute none).
    """
    if generators is not None:
        return obstruction_from_generators(generators, k)
    if square is None:
        raise ValueError("need a square or generators")
    from .winding import circle_components, winding_coordinates

    k = len(circle_components(square.common))
    gens = [winding_coordinates(h_img) for h_img in square_generator_images(square)]
    return obstruction_from_generators([g for g in gens if any(g)] or [], k)


def square_generator_images(square) -> list:
    """Images in ``SL2(D)`` of the standard Gamma generators of ``B`` and ``C``."""

    out = []
    for hom in (square.f, square.g):
        src = hom.source
        for gen in _gamma_generators(src):
            out.append(gen.apply(hom))
    return out


def _gamma_generators(ring) -> list:
    from .rings import QuotientRing
    from .squares import circle_ring
    from .winding import tau

    s1 = circle_ring()
    if ring == s1:
        return [tau(s1)]
    if isinstance(ring, QuotientRing) and ring.relation == s1.relation and ring.distinguished == s1.distinguished:
        return [tau(ring)]  # S1 with extra polynomial variables: constant loops in them
    return []
