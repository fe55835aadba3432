"""Command line: ``patternspace <subcommand> ...``.

Exit codes: 0 success / PASS, 1 FAIL verdict (report carries the
counterexample), 2 usage or parse error.  Reports are JSON in a fixed field
order with no timing unless ``--timing`` is given, so reruns are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .core import PatternError, Verdict, PASS
from .geometry import Window
from .instances import PointSet, MapPattern, Patch, dirac_comb, validate
from .io import (ParseError, load, encode, encode_obj, dec_q, verdict_report, enc_q)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _radii(s: str) -> list:
    try:
        return [dec_q(x.strip(), "--radii") for x in s.split(",") if x.strip()]
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _q(s: str) -> Fraction:
    try:
        return dec_q(s, "argument")
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _need(x, cls, what):
    if not isinstance(x, cls):
        raise UsageError(f"{what} must be a {cls.__name__} document")
    return x


def _emit_doc(obj, path, out: dict, key: str, metadata=None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(encode(obj, metadata))
        out[key] = path
    else:
        out[key] = encode_obj(obj, metadata)


# ---------------------------------------------------------------- commands

def cmd_validate(a):
    p = load(a.doc)
    if hasattr(p, "forward"):
        return {"object": "witness"}, Verdict.ok(0)
    if not hasattr(p, "cut"):
        return {"object": "rule"}, Verdict.ok(0)
    return {"kind": p.kind}, validate(p)


def cmd_axioms(a):
    from .laws import run_axioms
    p = load(a.doc)
    return {"kind": p.kind, "seed": a.seed}, run_axioms(p, a.cases, a.seed)


def cmd_voronoi(a):
    from .voronoi import punctured_voronoi_tiling, voronoi_rules
    from .derivability import MLDWitness, verify_mld_witness
    d = _need(load(a.doc), PointSet, "input")
    t = punctured_voronoi_tiling(d, a.punctured)
    out = {}
    _emit_doc(t, a.out, out, "tiling")
    if not a.punctured:
        return out, Verdict.ok(0)
    fwd, bwd = voronoi_rules(d, True)
    wit = MLDWitness(fwd, bwd, "voronoi")
    _emit_doc(wit, a.witness_out, out, "witness")
    R = max(fwd.margin, bwd.margin)
    return out, verify_mld_witness(wit, d, t, [R * k for k in (1, 2)] if a.radii is None else _radii(a.radii))


def cmd_dirac(a):
    from .derivability import verify_mld_witness
    d = _need(load(a.doc), PointSet, "input")
    mu, wit = dirac_comb(d)
    out = {}
    _emit_doc(mu, a.out, out, "comb")
    _emit_doc(wit, a.witness_out, out, "witness")
    return out, verify_mld_witness(wit, d, mu, _radii(a.radii))


def cmd_decompose(a):
    from .decompose import check_decomposes, components_and_plan, plan_mld_witness
    from .derivability import verify_mld_witness
    p = load(a.doc)
    d = _need(load(a.delone), PointSet, "--delone")
    R0 = _q(a.radius)
    v = check_decomposes(p, d, R0)
    if not v:
        return {"radius": R0}, v
    dec = components_and_plan(p, d, R0, ld_margin=v.details["ld_margin"])
    out = {"radius": R0, "n_components": dec.n_components,
           "stabilizer_orders": [len(s) for s in dec.stabilizers],
           "plan_translations": [dec.plan_translations(l) for l in range(dec.n_components)]}
    _emit_doc(dec.plan, a.out, out, "plan")
    wit = plan_mld_witness(dec, p)
    _emit_doc(wit, a.witness_out, out, "witness")
    return out, verify_mld_witness(wit, p, dec.plan, _radii(a.radii))


def cmd_synth(a):
    from .synthesis import synthesize_delone, verify_composed, probe_relative_density, SynthesisError
    p = load(a.doc)
    d = _need(load(a.delone), PointSet, "--delone")
    target = {"points": "PointSet", "patch": "Patch", "map": "MapPattern"}[a.target]
    try:
        res = synthesize_delone(p, d, target, R0=None if a.radius is None else _q(a.radius))
    except SynthesisError as exc:
        return {"stage": exc.stage}, Verdict.fail(str(exc))
    c = res.constants
    out = {"target": target, "R0": c["R0"], "r0": c["r0"], "r1": c["r1"], "r2": c["r2"],
           "marks": c["marks"], "n_components": res.decomposition.n_components}
    _emit_doc(res.S, a.out, out, "S")
    v = validate(res.S)
    if not v:
        v.reason = "validate: " + v.reason
        return out, v
    r0 = c["r0"]
    v = verify_composed(res.witness, p, res.S, [r0 * k for k in (1, 2, 4)])
    if not v:
        return out, v
    dens = probe_relative_density(res.S, res.decomposition.lattice, c["covering_bound"], r0 / 4)
    out["density_probe"] = dens.status
    return out, v if dens else dens


def cmd_check_ld(a):
    from .derivability import LocalRule, MLDWitness, verify_rule
    rule = load(a.rule)
    if isinstance(rule, MLDWitness):       # one direction of a witness
        rule = rule.backward if a.backward else rule.forward
    rule = _need(rule, LocalRule, "--rule")
    return {"rule": rule.name}, verify_rule(rule, load(a.p), load(a.q), _radii(a.radii))


def cmd_check_mld(a):
    from .derivability import MLDWitness, verify_mld_witness
    wit = _need(load(a.witness), MLDWitness, "--witness")
    return {"witness": wit.name}, verify_mld_witness(wit, load(a.p), load(a.q), _radii(a.radii))


def cmd_peq_check(a):
    from .peq import is_pattern_equivariant, rand_equivariance_check
    f = _need(load(a.f), MapPattern, "map")
    p = load(a.p)
    R = _q(a.radius)
    v = rand_equivariance_check(f, p, R) if a.twisted else is_pattern_equivariant(f, p, R)
    return {"radius": R, "twisted": a.twisted, "ld": v.details.get("ld")}, v


def cmd_peq_bump(a):
    from .peq import bump_companion
    from .derivability import verify_mld_witness
    d = _need(load(a.doc), PointSet, "input")
    f, wit = bump_companion(d)
    out = {}
    _emit_doc(f, a.out, out, "map")
    _emit_doc(wit, a.witness_out, out, "witness")
    return out, verify_mld_witness(wit, d, f, _radii(a.radii))


def cmd_render(a):
    from .render import render_svg, Box
    p = load(a.doc)
    if a.box:
        lo, hi = a.box.split(":")
        w = Box([_q(x) for x in lo.split(",")], [_q(x) for x in hi.split(",")])
    else:
        c, r = a.window.split(":")
        w = Window.ball(tuple(_q(x) for x in c.split(",")), _q(r))
    svg = render_svg(p, w)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        return {"svg": a.out}, Verdict.ok(0)
    sys.stdout.write(svg)
    return None, Verdict.ok(0)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="patternspace", description="Exact abstract pattern spaces: checks and pipelines.")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomised suites")
    ap.add_argument("--timing", action="store_true", help="include wall time in reports")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(fn=fn)
        return s

    s = add("validate", cmd_validate, "validate a document")
    s.add_argument("doc")
    s = add("axioms", cmd_axioms, "run the cut-law suite on a pattern")
    s.add_argument("doc")
    s.add_argument("--cases", type=int, default=50)
    s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    s = add("voronoi", cmd_voronoi, "Voronoi tiling of a Delone set, with witness")
    s.add_argument("doc")
    s.add_argument("--punctured", action="store_true")
    s.add_argument("--radii")
    for name, fn, h in (("dirac", cmd_dirac, "Dirac comb of a point set, with witness"),
                        ("peq-bump", cmd_peq_bump, "bump companion of a point set, with witness")):
        s = add(name, fn, h)
        s.add_argument("doc")
        s.add_argument("--radii", default="1,2")
        s.add_argument("--witness-out")
    sub.choices["voronoi"].add_argument("--witness-out")
    s = add("decompose", cmd_decompose, "components and plan")
    s.add_argument("doc")
    s.add_argument("--delone", required=True)
    s.add_argument("--radius", required=True)
    s.add_argument("--radii", default="1,2")
    s.add_argument("--witness-out")
    s = add("synth-delone", cmd_synth, "synthesise a Delone-type pattern MLD with the input")
    s.add_argument("doc")
    s.add_argument("--delone", required=True)
    s.add_argument("--target", choices=("points", "patch", "map"), default="points")
    s.add_argument("--radius")
    s = add("check-ld", cmd_check_ld, "verify a local rule p -> q")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--rule", required=True, help="rule document, or a witness (forward direction)")
    s.add_argument("--backward", action="store_true", help="use the witness's backward rule")
    s.add_argument("--radii", default="1,2")
    s = add("check-mld", cmd_check_mld, "verify an MLD witness p <-> q")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--witness", required=True)
    s.add_argument("--radii", default="1,2")
    s = add("peq-check", cmd_peq_check, "pattern-equivariance of a map")
    s.add_argument("f")
    s.add_argument("p")
    s.add_argument("--radius", default="1")
    s.add_argument("--twisted", action="store_true", help="⊓-windows and the map's representation")
    s = add("render", cmd_render, "SVG of a bounded window")
    s.add_argument("doc")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--window", help="ball 'x,y:r'")
    g.add_argument("--box", help="box 'x0,y0:x1,y1'")
    for name in ("validate", "axioms", "voronoi", "dirac", "peq-bump", "decompose", "synth-delone", "render"):
        sub.choices[name].add_argument("--out")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:      # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    t0 = time.perf_counter()
    try:
        out, v = a.fn(a)
    except (UsageError, ParseError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except PatternError as exc:
        out, v = {"error": type(exc).__name__}, Verdict.fail(str(exc))
    if out is None:
        return EXIT_OK if v.status == PASS else EXIT_FAIL
    rep = verdict_report(v, time.perf_counter() - t0 if a.timing else None, command=a.cmd, output=out)
    sys.stdout.write(json.dumps(rep, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK if v.status == PASS else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
