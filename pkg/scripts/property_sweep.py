"""Seeded sweep of the main invariants, for runs longer than the test suite allows.

Each check raises on failure; the script prints a count per check and exits 1
if anything failed.
"""

import argparse
import random
import sys
import time
from fractions import Fraction

from cohomotopy import homotopy as H
from cohomotopy import pipelines as P
from cohomotopy.errors import AlgebraError
from cohomotopy.matrix import elementary_assemble, sl2_factor_euclidean
from cohomotopy.random_instances import InstanceConfig, random_factors
from cohomotopy.rings import PolyRing
from cohomotopy.smith import smith_normal_form
from cohomotopy.squares import builtin_square


def check_chi(rng, square):
    a, b = P.synth_loop_pair(rng, square.left, square.left.all_vars())
    a2, b2 = P.synth_loop_pair(rng, square.left, square.left.all_vars())
    m1, m2 = H.chi_map(a, b, square), H.chi_map(a2, b2, square)
    prod = H.chi_map(a * a2, b * b2, square, certificate=m1.companion @ m2.companion)
    assert prod.image.rep == m1.image.rep @ m2.image.rep


def check_mv(rng, square):
    vars = square.left.all_vars()
    H.ker_psi2_preimage(*P.synth_ker_psi2(rng, square, vars), square)
    H.ker_phi1_preimage(*P.synth_ker_phi1(rng, square, vars), square)
    lp = P.synth_fibre_loop(rng, square)
    assert H.psi2(*H.psi1(lp, square), square).matrix.is_identity()
    e = H.GammaElem(lp.at(Fraction(rng.randint(1, 9), 10)))
    assert H.phi2(*H.phi1(e, square), square).rep.is_identity()


def check_factor(rng, _square):
    ring = PolyRing(("Y",))
    m = elementary_assemble(random_factors(rng, ring, ("Y",), InstanceConfig(6, 4)), 2, ring)
    assert elementary_assemble(sl2_factor_euclidean(m), 2, ring) == m


def check_cocycle(rng, square):
    D = square.common
    if D == builtin_square("swan", 3).common:
        fs, tw = P.random_circle_cocycle(rng)
    else:
        fs = random_factors(rng, D, D.all_vars(), InstanceConfig(max_factors=3, max_degree=2))
        tw = [D.one() for _ in fs]
    P.cocycle_round_trip(square, fs, tw)


def check_smith(rng, _square):
    n, k = rng.randint(1, 4), rng.randint(1, 4)
    m = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(n)]
    res = smith_normal_form(m)
    d = res.diagonal
    um = [[sum(res.left[i][a] * m[a][b] for a in range(n)) for b in range(k)] for i in range(n)]
    umv = [[sum(um[i][b] * res.right[b][j] for b in range(k)) for j in range(k)] for i in range(n)]
    assert umv == [[d[i] if i == j else 0 for j in range(k)] for i in range(n)]
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])


CHECKS = {
    "chi": (check_chi, ("circle", "cylinder")),
    "mv": (check_mv, ("circle", "cylinder", "torus")),
    "factor": (check_factor, (None,)),
    "cocycle": (check_cocycle, ("swan(3)", "cylinder", "klein")),
    "smith": (check_smith, (None,)),
}


def _square(name):
    if name is None:
        return None
    if name.startswith("swan("):
        return builtin_square("swan", int(name[5:-1]))
    return builtin_square(name)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=20, help="instances per check and square")
    ap.add_argument("--only", choices=sorted(CHECKS), action="append", help="restrict to these checks")
    args = ap.parse_args(argv)
    failed = 0
    for name in args.only or CHECKS:
        fn, squares = CHECKS[name]
        for sq_name in squares:
            rng = random.Random(f"{args.seed}:{name}:{sq_name}")
            sq = _square(sq_name)
            t0, bad = time.time(), 0
            for i in range(args.count):
                try:
                    fn(rng, sq)
                except (AlgebraError, AssertionError) as e:
                    bad += 1
                    print(f"  {name}/{sq_name} #{i}: {type(e).__name__}: {e}")
            label = f"{name}/{sq_name}" if sq_name else name
            print(f"{label:18s} {args.count - bad}/{args.count} ok  ({time.time() - t0:.1f}s)")
            failed += bad
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
