"""Unimodular rows over a fibre square, their co-cycles, and patching.

For ``A = B x_D C`` with ``f: B -> D`` surjective, a row over ``A`` whose two
legs have completions ``theta`` (over B) and ``sigma`` (over C) gives

    g(sigma) f(theta)^-1 = [[1, d12, d13], [0, lam]]

and ``lam`` in ``SL2(D)`` is the co-cycle. Completions here follow the
convention ``m . row = e1``; the matrix with the row as first column is
``m^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    NotACompletion,
    NotStablyElementary,
    NotUnimodular,
    RingMismatch,
    ShapeError,
    SplitInvalid,
)
from .matrix import (
    ElemFactor,
    Matrix,
    SLMatrix,
    elementary_assemble,
    embed_sl2_in_sl3,
    extract_block,
    identity,
)
from .rings import FibreProduct, Ring, _same_ring, hom_preimage


@dataclass(frozen=True)
class UmRow:
    ring: Ring
    entries: tuple
    bezout: tuple

    def components(self) -> tuple[UmRow, UmRow]:
        """The two legs ``(right, left)`` of a row over a fibre product."""
        sq = self.ring
        if not isinstance(sq, FibreProduct):
            raise TypeError(f"{sq} is not a fibre product")
        legs = []
        for k, r in enumerate((sq.right, sq.left)):
            legs.append(UmRow(r, tuple(e.value[k] for e in self.entries), tuple(b.value[k] for b in self.bezout)))
        return legs[0], legs[1]


def umrow_check(entries: Sequence, bezout: Sequence, ring: Ring) -> UmRow:
    if len(entries) != 3 or len(bezout) != 3:
        raise ShapeError("rows have three entries and three Bezout coefficients")
    a = tuple(ring.coerce(x) for x in entries)
    b = tuple(ring.coerce(x) for x in bezout)
    total = ring.zero()
    for x, y in zip(a, b):
        total = total + x * y
    if total != 1:
        raise NotUnimodular(f"sum a_k b_k = {total}, not 1", total)
    return UmRow(ring, a, b)


def _e1(ring: Ring) -> tuple:
    return (ring.one(), ring.zero(), ring.zero())


@dataclass(frozen=True)
class Completion:
    """``m`` in ``SL3`` with ``m . row = e1``."""

    m: SLMatrix
    row: UmRow

    @property
    def completed(self) -> SLMatrix:
        """The matrix whose first column is the row."""
        return self.m.inverse()


def completion_check(m: Matrix, row: UmRow) -> Completion:
    if m.n != 3:
        raise ShapeError("completions of length-3 rows are 3x3")
    if not _same_ring(m.ring, row.ring):
        raise RingMismatch(f"completion over {m.ring}, row over {row.ring}")
    if m.det() != 1:
        raise NotACompletion("completion is not in SL3")
    m = m if isinstance(m, SLMatrix) else m.to_sl()
    if m.apply_column(row.entries) != _e1(row.ring):
        raise NotACompletion("m . row is not (1, 0, 0)")
    return Completion(m, row)


@dataclass(frozen=True)
class Cocycle:
    lam: SLMatrix
    top: tuple
    provenance: str = field(default="", compare=False)

    def block(self) -> SLMatrix:
        return embed_sl2_in_sl3(self.lam, self.top)


@dataclass(frozen=True)
class SplitWitness:
    """``lam = g(delta) f(gamma)`` with ``gamma`` over B and ``delta`` over C."""

    gamma: SLMatrix
    delta: SLMatrix


def _check_legs(row: UmRow, theta: Completion, sigma: Completion, square: FibreProduct):
    if not _same_ring(row.ring, square):
        raise RingMismatch(f"row over {row.ring}, expected {square}")
    right, left = row.components()
    if not _same_ring(theta.m.ring, square.right) or theta.m.apply_column(right.entries) != _e1(square.right):
        raise NotACompletion("theta does not complete the right leg of the row")
    if not _same_ring(sigma.m.ring, square.left) or sigma.m.apply_column(left.entries) != _e1(square.left):
        raise NotACompletion("sigma does not complete the left leg of the row")


def cocycle_extract(row: UmRow, theta: Completion, sigma: Completion, square: FibreProduct) -> Cocycle:
    _check_legs(row, theta, sigma, square)
    d = sigma.m.apply(square.g) @ theta.m.apply(square.f).inverse()
    lam, top = extract_block(d)
    if embed_sl2_in_sl3(lam, top) != d:
        raise ShapeError("g(sigma) f(theta)^-1 is not block upper triangular")
    return Cocycle(lam, top, "g(sigma) f(theta)^-1")


def split_check(cocycle: Cocycle, w: SplitWitness, square: FibreProduct) -> SplitWitness:
    if not _same_ring(w.gamma.ring, square.right) or not _same_ring(w.delta.ring, square.left):
        raise SplitInvalid("split witness lives over the wrong rings")
    if w.gamma.det() != 1 or w.delta.det() != 1:
        raise SplitInvalid("split witness is not in SL2")
    if w.delta.apply(square.g) @ w.gamma.apply(square.f) != cocycle.lam:
        raise SplitInvalid("g(delta) f(gamma) differs from the co-cycle")
    return w


def split_complete(
    row: UmRow,
    cocycle: Cocycle,
    w: SplitWitness,
    theta: Completion,
    sigma: Completion,
    square: FibreProduct,
) -> Completion:
    """``M = [[1, b12, b13], [0, gamma]] theta`` and ``N = diag(1, delta^-1) sigma``;
    ``(M, N)`` completes the row over ``A``."""
    _check_legs(row, theta, sigma, square)
    if cocycle_extract(row, theta, sigma, square).lam != cocycle.lam:
        raise SplitInvalid("co-cycle does not come from these completions")
    split_check(cocycle, w, square)
    b12, b13 = (hom_preimage(square.f, d) for d in cocycle.top)
    M = embed_sl2_in_sl3(w.gamma, (b12, b13)) @ theta.m
    N = embed_sl2_in_sl3(w.delta.inverse()) @ sigma.m
    fM, gN = M.apply(square.f), N.apply(square.g)
    if fM != gN:
        from .errors import GlueMismatch

        raise GlueMismatch("f(M) differs from g(N)", fM, gN)
    mn = SLMatrix.from_components(square, [M, N])
    return completion_check(mn, row)


def completion_to_split(
    row: UmRow, mn: Completion, theta: Completion, sigma: Completion, square: FibreProduct
) -> SplitWitness:
    """From ``(M, N)`` completing the row read ``gamma`` off ``M theta^-1`` and ``tau``
    off ``N sigma^-1``; then ``lam = g(tau)^-1 f(gamma)``."""
    _check_legs(row, theta, sigma, square)
    completion_check(mn.m, row)
    M, N = mn.m.components()
    gamma, _ = extract_block(M @ theta.m.inverse())
    tau, _ = extract_block(N @ sigma.m.inverse())
    cocycle = cocycle_extract(row, theta, sigma, square)
    return split_check(cocycle, SplitWitness(gamma, tau.inverse()), square)


# -- patching -------------------------------------------------------------


@dataclass(frozen=True)
class PatchResult:
    row: UmRow
    theta: Completion
    sigma: Completion
    lifted: SLMatrix  # theta-hat over B with f(theta-hat) = diag(1, lam)


def milnor_patch(lam: SLMatrix, factors: Sequence[ElemFactor], square: FibreProduct) -> PatchResult:
    """A row over ``A`` whose co-cycle is ``lam``, from an elementary factorization of ``diag(1, lam)``.

    Each factor ``E_ij(d)`` is lifted to ``E_ij(s(d))`` with the fixed section
    ``s`` of ``f``, giving ``theta-hat``. The row is ``(theta-hat e1, e1)``,
    with completions ``theta = theta-hat^-1`` and ``sigma = I``; only ``f``
    needs a section.
    """
    D = square.common
    if not _same_ring(lam.ring, D):
        raise RingMismatch(f"lam over {lam.ring}, expected {D}")
    target = embed_sl2_in_sl3(lam)
    if elementary_assemble(factors, 3, D) != target:
        raise NotStablyElementary("the factors do not multiply to diag(1, lam)")
    B, C = square.right, square.left
    lifted = [ElemFactor(fac.i, fac.j, hom_preimage(square.f, fac.r)) for fac in factors]
    theta_hat = elementary_assemble(lifted, 3, B)
    theta_m = theta_hat.inverse()
    b_entries = theta_hat.column(0)
    b_bezout = theta_m.rows[0]
    e1c = _e1(C)
    entries = [square.make(b, c) for b, c in zip(b_entries, e1c)]
    bezout = [square.make(b, c) for b, c in zip(b_bezout, e1c)]
    row = umrow_check(entries, bezout, square)
    right, left = row.components()
    theta = completion_check(theta_m, right)
    sigma = completion_check(identity(C, 3), left)
    return PatchResult(row, theta, sigma, theta_hat)


def stabilized_factors(factors: Sequence[ElemFactor], twists: Sequence | None = None) -> list[ElemFactor]:
    """Factors of ``diag(1, lam)`` in ``SL3`` from factors of ``lam`` in ``SL2``.

    With a twist ``c``, ``E_ab(d)`` is written as
    ``E_b1(-c) E_a1(-dc) E_ab(d) E_b1(c)``, which involves the first index and
    so produces rows with a nontrivial first leg after lifting.
    """
    out: list[ElemFactor] = []
    twists = list(twists or [])
    for k, fac in enumerate(factors):
        a, b = fac.i + 1, fac.j + 1
        c = twists[k] if k < len(twists) else None
        if c is None:
            out.append(ElemFactor(a, b, fac.r))
            continue
        ring = fac.r.ring
        c = ring.coerce(c)
        out += [
            ElemFactor(b, 1, -c),
            ElemFactor(a, 1, -(fac.r * c)),
            ElemFactor(a, b, fac.r),
            ElemFactor(b, 1, c),
        ]
    return out


def lift_split(factors: Sequence[ElemFactor], square: FibreProduct) -> SplitWitness:
    """For ``lam = prod E(d_k)`` over D: ``gamma = prod E(s(d_k))`` over B and ``delta = I``."""
    B, C = square.right, square.left
    gamma = elementary_assemble([ElemFactor(f.i, f.j, hom_preimage(square.f, f.r)) for f in factors], 2, B)
    return SplitWitness(gamma, identity(C, 2))
