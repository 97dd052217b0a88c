"""Winding number of the first column of a circle-valued SL2 matrix.

The only floating-point part of the package. The circle is traversed
counterclockwise as ``(X, Y) = (cos 2 pi t, sin 2 pi t)``; with that
convention ``tau = [[x, y], [-y, x]]`` has first column ``(cos, -sin)`` and
winding number ``-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergent, UnsupportedRing
from .matrix import Matrix
from .poly import Poly
from .rings import DirectSum, FibreProduct, PolyRing, QuotientRing, Ring
from .squares import CIRCLE_VARS, circle_ring

START_SAMPLES = 256
MAX_SAMPLES = 2**20
SNAP_TOL = 1e-6


@dataclass(frozen=True)
class WindingReport:
    value: int
    samples: int
    max_step: float
    residual: float


def _first_column(m: Matrix) -> tuple[Poly, Poly]:
    if m.n != 2:
        raise UnsupportedRing("winding numbers are defined for 2x2 matrices")
    return m.rows[0][0].value, m.rows[1][0].value


def _curve(m: Matrix, mode: str, var: str | None):
    """A function ``t -> (a(t), c(t))`` on arrays of parameters in [0, 1)."""
    ring = m.ring
    if mode == "quotient-circle":
        if not (isinstance(ring, QuotientRing) and ring.vars == CIRCLE_VARS and ring == circle_ring()):
            raise UnsupportedRing(f"quotient-circle mode needs the circle ring, got {ring}")
        a, c = _first_column(m)

        def pts(t):
            ang = 2 * np.pi * t
            point = {"X": np.cos(ang), "Y": np.sin(ang)}
            return _ev(a, point, t), _ev(c, point, t)

        return pts
    if mode == "interval-B":
        if isinstance(ring, FibreProduct):
            var = var or ring.interval_var
            m = m.components()[0]
            ring = m.ring
        if not isinstance(ring, PolyRing) or var is None or set(ring.vars) != {var}:
            raise UnsupportedRing(f"interval-B mode needs a matrix in one variable, got {ring}")
        a, c = _first_column(m)
        if a.substitute({var: 0}) != a.substitute({var: 1}) or c.substitute({var: 0}) != c.substitute({var: 1}):
            raise UnsupportedRing("the first column does not close up at 0 and 1")

        def pts(t):
            point = {var: t}
            return _ev(a, point, t), _ev(c, point, t)

        return pts
    raise UnsupportedRing(f"unknown winding mode {mode!r}")


def _ev(p: Poly, point: dict, t: np.ndarray) -> np.ndarray:
    v = p.evaluate({k: point[k] for k in p.occurring_vars()}) if p.occurring_vars() else float(p.constant_term())
    return np.broadcast_to(np.asarray(v, dtype=float), t.shape)


def winding_number(m: Matrix, mode: str = "quotient-circle", var: str | None = None, samples: int = START_SAMPLES) -> WindingReport:
    curve = _curve(m, mode, var)
    n = max(8, int(samples))
    prev = None
    while n <= MAX_SAMPLES:
        t = np.arange(n + 1, dtype=float) / n
        a, c = curve(t)
        if np.any(np.hypot(a, c) == 0):
            raise NonConvergent("first column vanishes at a sample point")
        ang = np.arctan2(c, a)
        steps = np.diff(ang)
        steps = (steps + np.pi) % (2 * np.pi) - np.pi
        total = float(steps.sum()) / (2 * math.pi)
        value = int(round(total))
        residual = abs(total - value)
        max_step = float(np.abs(steps).max())
        if max_step < math.pi / 2 and residual < SNAP_TOL:
            # confirm with one more doubling before trusting the count
            if prev is not None and prev == value:
                return WindingReport(value, n, max_step, residual)
            prev = value
        else:
            prev = None
        n *= 2
    raise NonConvergent(f"no stable winding number with up to {MAX_SAMPLES} samples")


def winding(m: Matrix, **kw) -> int:
    return winding_number(m, **kw).value


def tau(ring: Ring | None = None) -> Matrix:
    from .matrix import SLMatrix

    ring = ring or circle_ring()
    return SLMatrix(ring, [["X", "Y"], ["-Y", "X"]])


def circle_components(ring: Ring) -> list[int]:
    """Indices of the components of ``ring`` that are the circle ring."""
    comps = ring.components if isinstance(ring, DirectSum) else (ring,)
    return [k for k, r in enumerate(comps) if r == circle_ring()]


def winding_coordinates(m: Matrix) -> tuple[int, ...]:
    """Winding of each circle component, in units of ``winding(tau)``.

    The unit is chosen so that ``tau`` has coordinate 1; components that are
    not the circle ring contribute no coordinate.
    """
    unit = winding(tau())
    ring = m.ring
    if isinstance(ring, DirectSum):
        parts = m.components()
        return tuple(winding(parts[k]) // unit for k in circle_components(ring))
    if ring == circle_ring():
        return (winding(m) // unit,)
    return ()
