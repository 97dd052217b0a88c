"""Seeded random instances for property runs, the CLI and the acceptance suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matrix import ElemFactor, SLMatrix, elementary_assemble
from .poly import Poly
from .rings import Ring


@dataclass(frozen=True)
class InstanceConfig:
    max_factors: int = 4
    max_degree: int = 3
    coeff_range: int = 3
    denominators: tuple = (1, 1, 1, 2)


def random_coeff(rng: random.Random, cfg: InstanceConfig) -> Fraction:
    return Fraction(rng.randint(-cfg.coeff_range, cfg.coeff_range), rng.choice(cfg.denominators))


def random_poly(rng: random.Random, vars: Sequence[str], degree: int, cfg: InstanceConfig, nonzero: bool = False) -> Poly:
    """Random polynomial of total degree at most ``degree`` in ``vars``."""
    vars = tuple(vars)
    while True:
        terms = {}
        for _ in range(rng.randint(1, 4)):
            mono = {}
            budget = rng.randint(0, degree)
            for _ in range(budget):
                if not vars:
                    break
                v = rng.choice(vars)
                mono[v] = mono.get(v, 0) + 1
            key = tuple(sorted(mono.items()))
            terms[key] = terms.get(key, 0) + random_coeff(rng, cfg)
        p = Poly(terms, vars)
        if p or not nonzero:
            return p


def random_factors(
    rng: random.Random,
    ring: Ring,
    vars: Sequence[str],
    cfg: InstanceConfig = InstanceConfig(),
    scale: Poly | None = None,
    count: int | None = None,
) -> list[ElemFactor]:
    """Elementary factors over ``ring`` with random entries in ``vars``, optionally times ``scale``."""
    n = rng.randint(1, cfg.max_factors) if count is None else count
    out = []
    for _ in range(n):
        i, j = rng.choice(((1, 2), (2, 1)))
        r = random_poly(rng, vars, cfg.max_degree, cfg, nonzero=True)
        if scale is not None:
            r = r * scale
        out.append(ElemFactor(i, j, ring.coerce(r)))
    return out


def random_sl2(rng: random.Random, ring: Ring, vars: Sequence[str], cfg: InstanceConfig = InstanceConfig()) -> SLMatrix:
    return elementary_assemble(random_factors(rng, ring, vars, cfg), 2, ring)


def interval_bump(var: str) -> Poly:
    """``var (1 - var)``: vanishes at both ends of the interval."""
    v = Poly.var(var, (var,))
    return v * (1 - v)


def random_loop_factors(
    rng: random.Random, base: Ring, vars: Sequence[str], var: str = "T", cfg: InstanceConfig = InstanceConfig()
) -> list[ElemFactor]:
    """Factors over ``base[var]`` whose entries are divisible by ``var (1 - var)``."""
    ring = base.extend(var)
    return random_factors(rng, ring, tuple(vars) + (var,), cfg, scale=interval_bump(var))


def random_loop(rng: random.Random, base: Ring, vars: Sequence[str], var: str = "T", cfg: InstanceConfig = InstanceConfig()):
    from .homotopy import loop_check

    fs = random_loop_factors(rng, base, vars, var, cfg)
    return loop_check(elementary_assemble(fs, 2, base.extend(var)), base, var), fs
