"""cohomotopy: exact checks for elementary-matrix loops, Mayer-Vietoris maps and co-cycle obstructions.

Exit codes: 0 when every check passed, 1 when a mathematical check failed
(the failed condition is printed), 2 for unreadable or malformed input.
Every ``--json`` document can be handed back to ``verify``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Callable

from . import homotopy as H
from . import pipelines as P
from .cocycle import (
    UmRow,
    cocycle_extract,
    completion_check,
    milnor_patch,
    split_complete,
    stabilized_factors,
    SplitWitness,
    umrow_check,
)
from .errors import AlgebraError, BoundaryMismatch, InputError, VerificationError
from .matrix import elementary_assemble, sl2_factor_euclidean
from .random_instances import InstanceConfig, random_factors
from .rings import FibreProduct, Ring
from .serialize import (
    element_to_doc,
    factors_from_doc,
    factors_to_doc,
    load_json,
    matrix_from_doc,
    matrix_to_doc,
    parse_ring_spec,
    require,
    ring_from_doc,
    ring_to_doc,
)
from .smith import obstruction_from_generators, obstruction_group, smith_normal_form
from .squares import BUILTIN_NAMES, builtin_square, check_square
from .winding import tau, winding_number

DEFAULT_SEED = 0


class Report:
    """Collects human-readable lines and the JSON document of one command."""

    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []
        self.doc: dict = {}

    def say(self, line: str):
        self.lines.append(line)

    def emit(self):
        if self.args.json:
            print(json.dumps(self.doc, indent=2))
        elif not self.args.quiet:
            for line in self.lines:
                print(line)


# -- document helpers ------------------------------------------------------


def _square(spec) -> FibreProduct:
    ring = ring_from_doc(spec) if not isinstance(spec, FibreProduct) else spec
    if not isinstance(ring, FibreProduct):
        raise InputError(f"{spec!r} is not a fibre square")
    return ring


def _doc_file(args) -> dict | None:
    return load_json(args.file) if args.file else None


def _need_file(args) -> dict:
    doc = _doc_file(args)
    if doc is None:
        raise InputError(f"{args.command} needs --file")
    return doc


def _row_doc(row: UmRow) -> dict:
    return {"entries": [element_to_doc(e) for e in row.entries], "bezout": [element_to_doc(e) for e in row.bezout]}


def _row_from(doc, ring) -> UmRow:
    entries, bezout = require(doc, "entries", "bezout")
    return umrow_check([_entry(x) for x in entries], [_entry(x) for x in bezout], ring)


def _entry(x):
    return tuple(_entry(c) for c in x) if isinstance(x, list) else x


def _loop_doc(lp: H.LoopWitness) -> dict:
    return {"kind": "loop", "ring": ring_to_doc(lp.base), "var": lp.var, "matrix": matrix_to_doc(lp.matrix)}


def _loop_from(doc, base: Ring | None = None, var: str | None = None) -> H.LoopWitness:
    base = base if base is not None else ring_from_doc(doc["ring"])
    var = var or doc.get("var", "T")
    return H.loop_check(matrix_from_doc(doc["matrix"], base.extend(var)), base, var)


# -- subcommands ----------------------------------------------------------------


def cmd_check_loop(args, rep: Report):
    doc = _need_file(args)
    lp = _loop_from(doc)
    rep.say(f"loop over {lp.base}: alpha(0) = alpha(1) = I verified")
    rep.doc = _loop_doc(lp)


def _homotopy_doc(h: H.HomotopyWitness) -> dict:
    a, b = h.ends
    return {
        "kind": "homotopy",
        "ring": ring_to_doc(a.base),
        "var": h.var,
        "param": h.param,
        "matrix": matrix_to_doc(h.matrix),
        "ends": [matrix_to_doc(a.matrix), matrix_to_doc(b.matrix)],
    }


def _homotopy_from(doc) -> H.HomotopyWitness:
    base = ring_from_doc(doc["ring"])
    var, param = doc.get("var", "T"), doc.get("param", "S")
    ends = [H.loop_check(matrix_from_doc(m, base.extend(var)), base, var) for m in doc["ends"]]
    gamma = matrix_from_doc(doc["matrix"], base.extend(var, param))
    return H.homotopy_check(gamma, ends[0], ends[1], param)


def cmd_check_homotopy(args, rep: Report):
    h = _homotopy_from(_need_file(args))
    rep.say("homotopy verified: gamma(T,0), gamma(T,1), gamma(0,S) = gamma(1,S) = I")
    rep.doc = _homotopy_doc(h)


def _path_doc(p: H.PathWitness) -> dict:
    return {
        "kind": "path",
        "ring": ring_to_doc(p.base),
        "var": p.var,
        "matrix": matrix_to_doc(p.matrix),
        "endpoint": matrix_to_doc(p.endpoint),
    }


def _path_from(doc) -> H.PathWitness:
    base = ring_from_doc(doc["ring"])
    var = doc.get("var", "T")
    return H.path_check(matrix_from_doc(doc["matrix"], base.extend(var)), matrix_from_doc(doc["endpoint"], base), var)


def _chi_run(doc) -> dict:
    sq = _square(doc["square"])
    var = doc.get("var", "T")
    a = H.loop_check(matrix_from_doc(doc["alpha"], sq.left.extend(var)), sq.left, var)
    b = H.loop_check(matrix_from_doc(doc["beta"], sq.left.extend(var)), sq.left, var)
    res = H.chi_map(a, b, sq)
    out = {
        "kind": "chi",
        "square": ring_to_doc(sq),
        "var": var,
        "alpha": matrix_to_doc(a.matrix),
        "beta": matrix_to_doc(b.matrix),
        "image": matrix_to_doc(res.image.rep),
        "companion": matrix_to_doc(res.companion),
    }
    for key in ("image", "companion"):
        if key in doc and doc[key] != out[key]:
            raise VerificationError(f"recorded {key} differs from the recomputed one")
    return out


def cmd_chi(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        sq = parse_ring_spec(args.ring or "circle")
        sq = _square(sq)
        rng = random.Random(args.seed)
        t = P.loop_vars(sq)[0]
        a, b = P.synth_loop_pair(rng, sq.left, sq.left.all_vars(), t=t)
        doc = {"square": ring_to_doc(sq), "var": t, "alpha": matrix_to_doc(a.matrix), "beta": matrix_to_doc(b.matrix)}
    out = _chi_run(doc)
    rep.say(f"chi over {_square(out['square'])}: M(0,T)=alpha, M(1,T)=beta, M(X,0)=I, M(0,1)=M(1,1)=I verified")
    rep.say(f"image (M(X,1), I) = {out['image']}")
    rep.doc = out


def _mv_map_run(doc) -> dict:
    sq = _square(doc["square"])
    which = doc["map"]
    var = doc.get("var", "T")
    out = {"kind": "mv-map", "map": which, "square": ring_to_doc(sq), "var": var}
    if which == "psi1":
        lp = H.loop_check(matrix_from_doc(doc["loop"], sq.extend(var)), sq, var)
        a, b = H.psi1(lp, sq)
        out.update(loop=matrix_to_doc(lp.matrix), result=[matrix_to_doc(a.matrix), matrix_to_doc(b.matrix)])
    elif which == "psi2":
        a = H.loop_check(matrix_from_doc(doc["alpha"], sq.right.extend(var)), sq.right, var)
        b = H.loop_check(matrix_from_doc(doc["beta"], sq.left.extend(var)), sq.left, var)
        r = H.psi2(a, b, sq)
        out.update(alpha=doc["alpha"], beta=doc["beta"], result=matrix_to_doc(r.matrix))
    elif which == "phi1":
        e = H.GammaElem(matrix_from_doc(doc["elem"], sq))
        a, b = H.phi1(e, sq)
        out.update(elem=doc["elem"], result=[matrix_to_doc(a.rep), matrix_to_doc(b.rep)])
    elif which == "phi2":
        a = H.GammaElem(matrix_from_doc(doc["alpha"], sq.right))
        b = H.GammaElem(matrix_from_doc(doc["beta"], sq.left))
        r = H.phi2(a, b, sq)
        out.update(alpha=doc["alpha"], beta=doc["beta"], result=matrix_to_doc(r.rep))
    else:
        raise InputError(f"unknown map {which!r}")
    if "result" in doc and doc["result"] != out["result"]:
        raise VerificationError("recorded result differs from the recomputed one")
    return out


def _mv_composites(sq: FibreProduct, rng: random.Random) -> list[str]:
    """psi2(psi1(x)) and phi2(phi1(x)) are exactly I on random fibre elements."""
    lp = P.synth_fibre_loop(rng, sq)
    img = H.psi2(*H.psi1(lp, sq), sq)
    if not img.matrix.is_identity():
        raise BoundaryMismatch("psi2(psi1(x)) = I", str(img.matrix))
    H.constant_homotopy(img, P.loop_vars(sq)[1])
    e = H.GammaElem(H._at(lp.matrix, sq, **{lp.var: Fraction(1, 2)}))
    c = H.phi2(*H.phi1(e, sq), sq)
    if not c.rep.is_identity():
        raise BoundaryMismatch("phi2(phi1(x)) = I", str(c.rep))
    return [
        "psi2(psi1(x)) = I exactly; witnessed by the constant homotopy",
        "phi2(phi1(x)) = I exactly; witnessed by the constant path",
    ]


def cmd_mv_map(args, rep: Report):
    doc = _doc_file(args)
    if doc is not None:
        out = _mv_map_run(doc)
        rep.say(f"{out['map']} = {out['result']}")
        rep.doc = out
        return
    sq = _square(parse_ring_spec(args.ring or "circle"))
    rng = random.Random(args.seed)
    lines = _mv_composites(sq, rng)
    for line in lines:
        rep.say(line)
    rep.doc = {"kind": "mv-composites", "square": ring_to_doc(sq), "seed": args.seed}


def _mv_witness_instances(sq: FibreProduct, rng: random.Random) -> list[dict]:
    H._two_point_var(sq)
    vars = sq.left.all_vars()
    out = []
    a, b, g0, g1 = P.synth_ker_psi2(rng, sq, vars)
    out.append(
        {
            "which": "ker-psi2",
            "alpha": matrix_to_doc(a.matrix),
            "beta": matrix_to_doc(b.matrix),
            "gamma": matrix_to_doc(g0.matrix),
            "gamma_prime": matrix_to_doc(g1.matrix),
        }
    )
    e, th, si = P.synth_ker_phi1(rng, sq, vars)
    out.append(
        {
            "which": "ker-phi1",
            "elem": matrix_to_doc(e.rep),
            "theta": matrix_to_doc(th.matrix),
            "sigma": matrix_to_doc(si.matrix),
        }
    )
    if not vars:
        a2, b2, s0, s1 = P.synth_ker_phi2(rng, sq)
        out.append(
            {
                "which": "ker-phi2",
                "alpha": matrix_to_doc(a2.rep),
                "beta": matrix_to_doc(b2.rep),
                "sigma": matrix_to_doc(s0.matrix),
                "sigma_prime": matrix_to_doc(s1.matrix),
            }
        )
    return out


def _run_mv_instance(inst: dict, sq: FibreProduct) -> dict:
    which = inst["which"]
    A, R = sq.left, sq.right
    t, s = P.loop_vars(sq)
    if which == "ker-psi2":
        a = H.loop_check(matrix_from_doc(inst["alpha"], R.extend(t)), R, t)
        b = H.loop_check(matrix_from_doc(inst["beta"], A.extend(t)), A, t)
        x = sq.interval_var
        hs = []
        for key, end in (("gamma", 0), ("gamma_prime", 1)):
            hi = H.loop_check(H._at(a.matrix, A.extend(t), **{x: end}) @ b.matrix.inverse(), A, t)
            hs.append(H.homotopy_check(matrix_from_doc(inst[key], A.extend(t, s)), H.constant_loop(A, t), hi, s))
        res = H.ker_psi2_preimage(a, b, hs[0], hs[1], sq)
        return {"preimage": matrix_to_doc(res.preimage.matrix), "homotopy": matrix_to_doc(res.homotopy.matrix)}
    if which == "ker-phi1":
        e = H.GammaElem(matrix_from_doc(inst["elem"], sq))
        alpha, beta = e.rep.components()
        th = H.path_check(matrix_from_doc(inst["theta"], R.extend(t)), alpha, t)
        si = H.path_check(matrix_from_doc(inst["sigma"], A.extend(t)), beta, t)
        res = H.ker_phi1_preimage(e, th, si, sq)
        return {"loops": [matrix_to_doc(lp.matrix) for lp in res.loops], "image": matrix_to_doc(res.chi.image.rep)}
    if which == "ker-phi2":
        a = H.GammaElem(matrix_from_doc(inst["alpha"], R))
        b = H.GammaElem(matrix_from_doc(inst["beta"], A))
        paths = []
        for key in ("sigma", "sigma_prime"):
            m = matrix_from_doc(inst[key], A.extend(t))
            paths.append(H.path_check(m, H._at(m, A, **{t: 1}), t))
        res = H.ker_phi2_preimage(a, b, paths[0], paths[1], sq)
        return {"preimage": matrix_to_doc(res.preimage.rep), "theta": matrix_to_doc(res.equivalence.matrix)}
    raise InputError(f"unknown construction {which!r}")


def _mv_witness_run(doc) -> dict:
    sq = _square(doc["square"])
    out = {"kind": "mv-witness", "square": ring_to_doc(sq), "instances": []}
    for inst in doc["instances"]:
        res = _run_mv_instance(inst, sq)
        for k, v in res.items():
            if k in inst and inst[k] != v:
                raise VerificationError(f"{inst['which']}: recorded {k} differs from the recomputed one")
        out["instances"].append({**inst, **res})
    return out


def cmd_mv_witness(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        sq = _square(parse_ring_spec(args.ring or "circle"))
        doc = {"square": ring_to_doc(sq), "instances": _mv_witness_instances(sq, random.Random(args.seed))}
    out = _mv_witness_run(doc)
    for inst in out["instances"]:
        rep.say(f"{inst['which']}: every boundary condition verified")
    rep.doc = out


def _factor_run(doc) -> dict:
    ring = ring_from_doc(doc["ring"])
    m = matrix_from_doc(doc["matrix"], ring)
    fs = sl2_factor_euclidean(m)
    if elementary_assemble(fs, 2, ring) != m:
        raise VerificationError("factors do not reassemble to the input")
    if "factors" in doc:
        given = factors_from_doc(doc["factors"], ring)
        if elementary_assemble(given, 2, ring) != m:
            raise VerificationError("recorded factors do not reassemble to the input")
    return {"kind": "factorization", "ring": ring_to_doc(ring), "matrix": matrix_to_doc(m), "factors": factors_to_doc(fs)}


def cmd_factor(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        ring = parse_ring_spec(args.ring or "Q[Y]")
        rng = random.Random(args.seed)
        m = elementary_assemble(random_factors(rng, ring, ring.all_vars(), InstanceConfig(max_factors=6, max_degree=4)), 2, ring)
        doc = {"ring": ring_to_doc(ring), "matrix": matrix_to_doc(m)}
    out = _factor_run(doc)
    rep.say(f"{len(out['factors'])} elementary factors; product reassembles exactly")
    for f in out["factors"]:
        rep.say(f"  E{f['i']}{f['j']}({f['r']})")
    rep.doc = out


def _patched(sq: FibreProduct, rng: random.Random):
    if sq.common == P.circle_ring():
        fs, tw = P.random_circle_cocycle(rng)
    else:
        D = sq.common
        fs = random_factors(rng, D, D.all_vars(), InstanceConfig(max_factors=3, max_degree=2))
        tw = [D.one() for _ in fs]
    lam = elementary_assemble(fs, 2, sq.common)
    return lam, fs, milnor_patch(lam, stabilized_factors(fs, tw), sq)


def _cocycle_run(doc) -> dict:
    sq = _square(doc["square"])
    row = _row_from(doc["row"], sq)
    right, left = row.components()
    theta = completion_check(matrix_from_doc(doc["theta"], sq.right), right)
    sigma = completion_check(matrix_from_doc(doc["sigma"], sq.left), left)
    cyc = cocycle_extract(row, theta, sigma, sq)
    out = {
        "kind": "cocycle",
        "square": ring_to_doc(sq),
        "row": _row_doc(row),
        "theta": matrix_to_doc(theta.m),
        "sigma": matrix_to_doc(sigma.m),
        "lambda": matrix_to_doc(cyc.lam),
        "top": [element_to_doc(e) for e in cyc.top],
    }
    for key in ("lambda", "top"):
        if key in doc and doc[key] != out[key]:
            raise VerificationError(f"recorded {key} differs from the recomputed one")
    return out


def cmd_cocycle(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        sq = _square(parse_ring_spec(args.ring or "swan(3)"))
        _, _, p = _patched(sq, random.Random(args.seed))
        doc = {"square": ring_to_doc(sq), "row": _row_doc(p.row), "theta": matrix_to_doc(p.theta.m), "sigma": matrix_to_doc(p.sigma.m)}
    out = _cocycle_run(doc)
    rep.say("g(sigma) f(theta)^-1 has first column e1; co-cycle extracted")
    rep.say(f"lambda = {out['lambda']}")
    rep.doc = out


def _split_complete_run(doc) -> dict:
    sq = _square(doc["square"])
    c = _cocycle_run(doc)
    row = _row_from(doc["row"], sq)
    right, left = row.components()
    theta = completion_check(matrix_from_doc(doc["theta"], sq.right), right)
    sigma = completion_check(matrix_from_doc(doc["sigma"], sq.left), left)
    cyc = cocycle_extract(row, theta, sigma, sq)
    w = SplitWitness(matrix_from_doc(doc["gamma"], sq.right), matrix_from_doc(doc["delta"], sq.left))
    comp = split_complete(row, cyc, w, theta, sigma, sq)
    out = {**c, "kind": "completion", "gamma": doc["gamma"], "delta": doc["delta"], "completion": matrix_to_doc(comp.m)}
    if "completion" in doc and doc["completion"] != out["completion"]:
        raise VerificationError("recorded completion differs from the recomputed one")
    return out


def cmd_split_complete(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        sq = _square(parse_ring_spec(args.ring or "swan(3)"))
        lam, fs, p = _patched(sq, random.Random(args.seed))
        from .cocycle import lift_split

        w = lift_split(fs, sq)
        doc = {
            "square": ring_to_doc(sq),
            "row": _row_doc(p.row),
            "theta": matrix_to_doc(p.theta.m),
            "sigma": matrix_to_doc(p.sigma.m),
            "gamma": matrix_to_doc(w.gamma),
            "delta": matrix_to_doc(w.delta),
        }
    out = _split_complete_run(doc)
    rep.say("split verified: lambda = g(delta) f(gamma)")
    rep.say("(M, N) in SL3(A) built; f(M) = g(N); (M, N) . row = e1 verified")
    rep.doc = out


def _milnor_run(doc) -> dict:
    sq = _square(doc["square"])
    lam = matrix_from_doc(doc["lambda"], sq.common)
    fs = factors_from_doc(doc["factors"], sq.common)
    p = milnor_patch(lam, fs, sq)
    cyc = cocycle_extract(p.row, p.theta, p.sigma, sq)
    if cyc.lam != lam:
        raise VerificationError("the patched row does not return lambda")
    out = {
        "kind": "milnor-patch",
        "square": ring_to_doc(sq),
        "lambda": matrix_to_doc(lam),
        "factors": factors_to_doc(fs),
        "row": _row_doc(p.row),
        "theta": matrix_to_doc(p.theta.m),
        "sigma": matrix_to_doc(p.sigma.m),
    }
    if "row" in doc and doc["row"] != out["row"]:
        raise VerificationError("recorded row differs from the recomputed one")
    return out


def cmd_milnor_patch(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        sq = _square(parse_ring_spec(args.ring or "swan(3)"))
        rng = random.Random(args.seed)
        if sq.common == P.circle_ring():
            fs, tw = P.random_circle_cocycle(rng)
        else:
            fs = random_factors(rng, sq.common, sq.common.all_vars(), InstanceConfig(max_factors=3, max_degree=2))
            tw = [sq.common.one() for _ in fs]
        lam = elementary_assemble(fs, 2, sq.common)
        doc = {"square": ring_to_doc(sq), "lambda": matrix_to_doc(lam), "factors": factors_to_doc(stabilized_factors(fs, tw))}
    out = _milnor_run(doc)
    rep.say("diag(1, lambda) factors lifted through f; row over A built and verified unimodular")
    rep.say(f"row = {out['row']['entries']}")
    rep.doc = out


def _winding_run(doc, samples: int) -> dict:
    ring = ring_from_doc(doc.get("ring", "S1"))
    m = matrix_from_doc(doc["matrix"], ring)
    mode = doc.get("mode", "quotient-circle")
    r = winding_number(m, mode=mode, var=doc.get("var"), samples=samples)
    out = {
        "kind": "winding",
        "ring": ring_to_doc(ring),
        "matrix": matrix_to_doc(m),
        "mode": mode,
        "value": r.value,
        "samples": r.samples,
        "max_step": r.max_step,
        "residual": r.residual,
    }
    if "value" in doc and doc["value"] != r.value:
        raise VerificationError(f"recorded winding {doc['value']} differs from {r.value}")
    return out


def cmd_winding(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        t = tau()
        doc = {"ring": "S1", "matrix": matrix_to_doc(t)}
    out = _winding_run(doc, args.samples)
    rep.say(f"winding = {out['value']} (samples {out['samples']}, max step {out['max_step']:.3g}, residual {out['residual']:.1e})")
    rep.doc = out


def _smith_run(doc) -> dict:
    m = doc["matrix"]
    try:
        m = [[int(x) for x in r] for r in m]
    except (TypeError, ValueError) as e:
        raise InputError(f"smith needs an integer matrix: {e}") from e
    d = smith_normal_form(m).diagonal
    out = {"kind": "smith", "matrix": m, "invariant_factors": list(d)}
    if "invariant_factors" in doc and list(doc["invariant_factors"]) != list(d):
        raise VerificationError("recorded invariant factors differ")
    return out


def cmd_smith(args, rep: Report):
    doc = _doc_file(args) or {"matrix": [[1, 1], [1, -1]]}
    out = _smith_run(doc)
    rep.say(f"invariant factors {tuple(out['invariant_factors'])}")
    rep.doc = out


def _obstruction_doc(name: str, sq: FibreProduct) -> dict:
    g = obstruction_group(sq)
    return {
        "kind": "obstruction",
        "square": ring_to_doc(sq),
        "generators": [list(x) for x in g.generators],
        "coordinates": g.coordinates,
        "invariant_factors": list(g.invariant_factors),
        "group": g.label,
    }


def _obstruction_run(doc) -> dict:
    if "square" in doc:
        sq = _square(doc["square"])
        out = _obstruction_doc(str(sq), sq)
    else:
        g = obstruction_from_generators(doc["generators"], doc.get("coordinates"))
        out = {"kind": "obstruction", "generators": [list(x) for x in g.generators], "coordinates": g.coordinates,
               "invariant_factors": list(g.invariant_factors), "group": g.label}
    if "group" in doc and doc["group"] != out["group"]:
        raise VerificationError(f"recorded group {doc['group']} differs from {out['group']}")
    return out


def cmd_obstruction(args, rep: Report):
    doc = _doc_file(args)
    if doc is None:
        sq = _square(parse_ring_spec(args.ring or "klein"))
        doc = {"square": ring_to_doc(sq)}
    out = _obstruction_run(doc)
    rep.say(f"generators {out['generators']} -> invariant factors {tuple(out['invariant_factors'])}, group {out['group']}")
    rep.doc = out


def cmd_swan_demo(args, rep: Report):
    n = args.n if args.n is not None else 3
    d = P.swan_demo(n, args.samples)
    c = d.certificate
    rep.say(f"swan square n = {n}; co-cycle tau^2")
    rep.say(f"winding(tau^2) = {c.winding} (residual {c.residual:.1e}, {c.samples} samples)")
    rep.say(f"winding(mu_{n}(tau)) = {n} winding(tau) re-checked")
    rep.say(f"verdict: {c.verdict} ({c.reason})")
    rep.say(f"obstruction group Gamma(D)/im: {d.obstruction.label}")
    rep.doc = {**c.to_doc(), "lambda": matrix_to_doc(d.lam), "obstruction": d.obstruction.label}


def _swan_verify(doc, samples) -> None:
    from .squares import circle_ring

    lam = matrix_from_doc(doc["lambda"], circle_ring()) if "lambda" in doc else tau() @ tau()
    c = P.swan_certificate(int(doc["n"]), lam, samples)
    if c.verdict != doc["verdict"] or c.winding != doc["winding"]:
        raise VerificationError(f"recomputed verdict {c.verdict} / winding {c.winding} differ")


def cmd_klein_demo(args, rep: Report):
    d = P.klein_demo()
    rep.say(f"images of Gamma(delta), Gamma(Delta): {list(d.expected_generators)}")
    rep.say(f"smith_normal_form([[1,1],[1,-1]]) = {d.smith}")
    rep.say(f"invariant factors {d.group.invariant_factors}, group {d.group.label}")
    rep.doc = {"kind": "klein-demo", "smith": list(d.smith), "invariant_factors": list(d.group.invariant_factors), "group": d.group.label}


def cmd_torus_demo(args, rep: Report):
    d = P.torus_demo()
    rep.say(f"generators {list(d.group.generators)} in winding coordinates")
    rep.say(f"invariant factors {d.group.invariant_factors}, group {d.group.label} (= Gamma(A) coordinate)")
    rep.doc = {"kind": "torus-demo", "invariant_factors": list(d.group.invariant_factors), "group": d.group.label}


def cmd_cylinder_demo(args, rep: Report):
    d = P.cylinder_demo(args.seed)
    nf = sum(len(f) for f in d.factors)
    rep.say(f"random co-cycle over Q[Y] + Q[Y] refactored into {nf} elementary matrices")
    rep.say("split lambda = g(I) f(gamma) with gamma = prod E((1-X)a) prod E(X b) verified")
    rep.say("patched row completed over the cylinder ring; (M, N) . row = e1 verified")
    rep.doc = {"kind": "cylinder-demo", "seed": args.seed, "lambda": matrix_to_doc(d.lam), "completion": matrix_to_doc(d.completion.m)}


def cmd_catalog(args, rep: Report):
    entries = []
    for name in BUILTIN_NAMES:
        sq = builtin_square(name, 3 if name == "swan" else None)
        if not check_square(sq):
            raise VerificationError(f"{name}: a square map does not respect its relation")
        g = obstruction_group(sq)
        entries.append({"name": str(sq), "right": str(sq.right), "left": str(sq.left), "common": str(sq.common), "group": g.label})
        rep.say(f"{str(sq):10s} B = {str(sq.right):18s} C = {str(sq.left):18s} D = {str(sq.common):34s} obstruction {g.label}")
    rep.doc = {"kind": "catalog", "squares": entries}


# -- verify -------------------------------------------------------------


def _verify_doc(doc: dict, args) -> str:
    kind = doc.get("kind")
    if kind == "loop":
        _loop_from(doc)
    elif kind == "homotopy":
        _homotopy_from(doc)
    elif kind == "path":
        _path_from(doc)
    elif kind == "chi":
        _chi_run(doc)
    elif kind == "mv-map":
        _mv_map_run(doc)
    elif kind == "mv-composites":
        _mv_composites(_square(doc["square"]), random.Random(doc.get("seed", DEFAULT_SEED)))
    elif kind == "mv-witness":
        _mv_witness_run(doc)
    elif kind == "factorization":
        _factor_run(doc)
    elif kind == "cocycle":
        _cocycle_run(doc)
    elif kind == "completion":
        _split_complete_run(doc)
    elif kind == "milnor-patch":
        _milnor_run(doc)
    elif kind == "winding":
        _winding_run(doc, args.samples)
    elif kind == "smith":
        _smith_run(doc)
    elif kind == "obstruction":
        _obstruction_run(doc)
    elif kind == "swan-certificate":
        _swan_verify(doc, args.samples)
    elif kind == "klein-demo":
        if P.klein_demo().group.label != doc.get("group"):
            raise VerificationError("Klein group differs")
    elif kind == "torus-demo":
        if P.torus_demo().group.label != doc.get("group"):
            raise VerificationError("torus group differs")
    elif kind == "cylinder-demo":
        d = P.cylinder_demo(int(doc.get("seed", DEFAULT_SEED)))
        if matrix_to_doc(d.completion.m) != doc.get("completion"):
            raise VerificationError("cylinder completion differs")
    elif kind == "catalog":
        pass
    else:
        raise InputError(f"unknown document kind {kind!r}")
    return kind


def cmd_verify(args, rep: Report):
    doc = _need_file(args)
    kind = _verify_doc(doc, args)
    rep.say(f"{kind}: verified")
    rep.doc = {"kind": "verification", "verified": kind, "ok": True}


COMMANDS: dict[str, tuple[Callable, str]] = {
    "check-loop": (cmd_check_loop, "verify a loop witness file"),
    "check-homotopy": (cmd_check_homotopy, "verify a homotopy witness file"),
    "chi": (cmd_chi, "the chi map on a loop pair, with its companion M(X,T)"),
    "mv-map": (cmd_mv_map, "apply psi1/psi2/phi1/phi2, or check the composites on random data"),
    "mv-witness": (cmd_mv_witness, "run the three exactness constructions"),
    "factor": (cmd_factor, "Euclidean elementary factorization in SL2(Q[v])"),
    "cocycle": (cmd_cocycle, "extract the co-cycle of a row"),
    "split-complete": (cmd_split_complete, "complete a row from a splitting of its co-cycle"),
    "milnor-patch": (cmd_milnor_patch, "patch a row from a stably elementary co-cycle"),
    "winding": (cmd_winding, "winding number of a circle-valued matrix"),
    "smith": (cmd_smith, "Smith normal form of an integer matrix"),
    "obstruction": (cmd_obstruction, "obstruction group of a built-in square"),
    "swan-demo": (cmd_swan_demo, "non-freeness certificate for tau^2 over the degree-n square"),
    "klein-demo": (cmd_klein_demo, "obstruction group of the Klein bottle square"),
    "torus-demo": (cmd_torus_demo, "obstruction group of the torus square"),
    "cylinder-demo": (cmd_cylinder_demo, "split and complete a random cylinder co-cycle"),
    "catalog": (cmd_catalog, "list the built-in squares"),
    "verify": (cmd_verify, "re-verify any JSON document emitted by another command"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cohomotopy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--file", help="input JSON document")
        p.add_argument("--ring", help="ring or square, e.g. Q[Y], S1, klein, swan(3)")
        p.add_argument("--n", type=int, help="degree for the swan square")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for generated instances")
        p.add_argument("--samples", type=int, default=256, help="initial winding sample count")
        p.add_argument("--json", action="store_true", help="print the JSON document")
        p.add_argument("--quiet", action="store_true", help="no human-readable output")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    rep = Report(args)
    fn = COMMANDS[args.command][0]
    try:
        fn(args, rep)
    except VerificationError as e:
        cond = getattr(e, "condition", None)
        print(f"FAILED: {cond + ': ' if cond else ''}{e}", file=sys.stderr)
        return 1
    except (InputError, KeyError, TypeError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except AlgebraError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    rep.emit()
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
