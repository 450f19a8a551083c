"""Command-line front end: deterministic JSON reports over field/poly specs.

Subcommands: analyze, stabilizer, standard-form, equiv, mrd, plane,
families, selftest.  All reports carry schema_version 1, echo the field
spec, and emit field elements as "g^k" strings ordered canonically, so
identical inputs (and seed) produce byte-identical output.  Exit codes:
0 success, 2 refused precondition (SmallQ, HallCase, TooLarge, ...),
1 any other error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import families as fam
from . import mrd, plane, selftest
from .errors import ParseError, RefusedPrecondition, ScatteredLabError
from .field_tower import field_from_json
from .linearized import LinearizedPoly
from .scatter import is_scattered, is_scattered_naive, linear_set
from .stabilizer import compute_stabilizer, diagonalize, transversal_points
from .standard_form import gammal_equivalent, gl_equivalent, in_class_S, to_standard_form

SCHEMA_VERSION = 1
KNOWN_TASKS = ("scatter", "stabilizer", "standard-form", "mrd", "plane")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_field(path):
    return field_from_json(_load_json(path))


def _load_poly(tower, path):
    doc = _load_json(path)
    if "coeffs" not in doc or len(doc["coeffs"]) != tower.n:
        raise ParseError(f"{path}: polynomial needs exactly n={tower.n} coefficients")
    return LinearizedPoly.from_json(tower, doc)


def _threads(args):
    env = os.environ.get("SCATTERED_LAB_THREADS")
    if getattr(args, "threads", None):
        return args.threads
    if env and env.isdigit():
        return int(env)
    return 1


def _emit(doc, stream=None):
    json.dump(doc, stream or sys.stdout, indent=2, sort_keys=True)
    (stream or sys.stdout).write("\n")


def _task_scatter(T, f, args):
    ls = linear_set(f)
    doc = ls.to_json(T, emit_points=args.emit_points)
    if args.oracle:
        doc["oracle_agrees"] = bool(
            is_scattered_naive(f, "projective") == ls.scattered)
    return doc


def _stabilizer_doc(T, f):
    Mf = compute_stabilizer(f, check_scattered=False)
    if not Mf.enumerated:
        return {
            "verified_field": False,
            "unverified": True,
            "solution_space_dim_over_Fp": Mf.solution_dim,
            "note": "solution space too large to enumerate; input is not scattered",
        }
    # hashes of the polynomial and of its linear set, for experiments on
    # whether transversal points depend on more than the linear set
    import hashlib

    ls = linear_set(f) if is_scattered(f) else None
    doc = {
        "order": Mf.group_order,
        "field_order": Mf.order,
        "verified_field": Mf.verified,
        "poly_hash": hashlib.sha256(repr(f.coeffs).encode()).hexdigest()[:16],
        "linear_set_hash": (hashlib.sha256(repr(ls.slopes).encode()).hexdigest()[:16]
                            if ls else None),
    }
    if Mf.verified:
        doc["t"] = Mf.t
        doc["generator"] = Mf.generator.to_json()
        if Mf.t > 1:
            dg = diagonalize(Mf)
            X, Y = transversal_points(f)
            doc["s"] = dg.s
            doc["diagonalized"] = True
            doc["transversals"] = [[T.format_code(X[0]), T.format_code(X[1])],
                                   [T.format_code(Y[0]), T.format_code(Y[1])]]
        else:
            doc["s"] = 0
            doc["diagonalized"] = True
            doc["transversals"] = None
    else:
        doc["unverified"] = True
    return doc


def _task_mrd(T, f, args):
    C = mrd.code_of(f)
    mode = "exact" if not args.sample_mrd else "sample"
    d = mrd.min_distance(C, mode=mode, class_bound=args.exact_mrd_bound)
    doc = {
        "min_distance": d,
        "is_mrd": bool(d == T.n - 1 and not C.degenerate),
        "mode": mode,
    }
    if is_scattered(f):
        rep = mrd.check_idealizer_matches_stabilizer(f)
        doc["right_idealizer_order"] = rep["order"]
        doc["matches_stabilizer"] = rep["matches"]
    else:
        IR = mrd.right_idealizer(C)
        doc["right_idealizer_order"] = IR.order
        doc["matches_stabilizer"] = None
    if args.oracle:
        try:
            doc["oracle_min_distance"] = mrd.min_distance_naive(C)
        except RefusedPrecondition:
            doc["oracle_min_distance"] = None
            doc["oracle_note"] = "field too large for full q^(2n) enumeration"
    return doc


def _task_plane(T, f, args):
    hr = plane.classify_central_collineations(f)
    doc = hr.to_json(T)
    lc = plane.linear_collineations(f)
    doc["H_f_order"] = lc["order"]
    try:
        w = plane.reducibility_witness(f)
        doc["andre_witness"] = w.to_json(T)
    except ScatteredLabError as exc:
        doc["andre_witness"] = {"error": exc.code}
    return doc


def cmd_analyze(args):
    T = _load_field(args.field)
    f = _load_poly(T, args.poly)
    tasks = [t.strip() for t in args.tasks.split(",") if t.strip()]
    if not tasks:
        raise ParseError("empty task list")
    for t in tasks:
        if t not in KNOWN_TASKS:
            raise ParseError(f"unknown task {t!r}; choose from {', '.join(KNOWN_TASKS)}")
    report = {
        "schema_version": SCHEMA_VERSION,
        "field": T.spec().to_json(),
        "poly": f.to_json("g^k")["coeffs"],
        "threads": _threads(args),
        "tasks": {},
    }
    for t in tasks:
        if t == "scatter":
            report["tasks"]["scatter"] = {"scattered": is_scattered(f),
                                          "linear_set": _task_scatter(T, f, args)}
        elif t == "stabilizer":
            report["tasks"]["stabilizer"] = _stabilizer_doc(T, f)
        elif t == "standard-form":
            report["tasks"]["standard-form"] = to_standard_form(f).to_json()
        elif t == "mrd":
            report["tasks"]["mrd"] = _task_mrd(T, f, args)
        elif t == "plane":
            report["tasks"]["plane"] = _task_plane(T, f, args)
    _emit(report)
    return 0


def cmd_single_task(task):
    def run(args):
        args.tasks = task
        return cmd_analyze(args)

    return run


def cmd_equiv(args):
    T = _load_field(args.field)
    f = _load_poly(T, args.f)
    g = _load_poly(T, args.g)
    res = gammal_equivalent(f, g) if args.mode == "gammal" else gl_equivalent(f, g)
    _emit({
        "schema_version": SCHEMA_VERSION,
        "field": T.spec().to_json(),
        "equiv": res.to_json(),
        "in_class_S": [in_class_S(f), in_class_S(g)],
    })
    return 0


def cmd_families(args):
    T = field_from_json({"p": args.q_prime, "e": args.e, "n": args.n, "seed": args.seed}) \
        if args.field is None else _load_field(args.field)
    fid = args.family
    if fid == 1:
        inst = fam.make_pseudoregulus(T, args.s)
    elif fid == 2:
        delta = T.parse_element(args.delta) if args.delta else fam.find_lp_delta(T)
        inst = fam.make_lp(T, args.s, delta)
    elif fid == 3:
        delta = T.parse_element(args.delta) if args.delta else fam.find_family3_delta(T, args.s)
        inst = fam.make_family3(T, args.s, delta)
    elif fid == 4:
        delta = T.parse_element(args.delta) if args.delta else fam.find_family4_delta(T)
        inst = fam.make_family4(T, delta)
    elif fid == 5:
        t = args.t or T.n // 2
        h = T.parse_element(args.h) if args.h else fam.find_psi_h(T, t)
        inst = fam.make_psi(T, h, t, args.s)
    else:
        raise ParseError(f"unknown family {fid}")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "field": T.spec().to_json(),
        "instance": inst.to_json(),
    }
    if args.verify:
        Mf = compute_stabilizer(inst.poly)
        doc["verified"] = {
            "scattered": True,
            "stabilizer_order": Mf.group_order,
            "matches_prediction": Mf.element_set() == inst.predicted_set,
        }
    _emit(doc)
    return 0


def cmd_selftest(args):
    results = selftest.run_all(quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="scattered-lab",
        description="Scattered linearized polynomials: stabilizers, standard forms, "
                    "MRD codes and translation-plane structure.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, poly=True):
        p.add_argument("--field", required=poly, help="field spec JSON file")
        if poly:
            p.add_argument("--poly", required=True, help="polynomial JSON file")
        p.add_argument("--emit-points", action="store_true")
        p.add_argument("--oracle", action="store_true",
                       help="cross-check with the naive quadratic algorithms")
        p.add_argument("--sample-mrd", action="store_true")
        p.add_argument("--exact-mrd-bound", type=int, default=1 << 20)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="run a comma-separated list of tasks")
    add_common(p)
    p.add_argument("--tasks", required=True,
                   help=f"subset of: {','.join(KNOWN_TASKS)}")
    p.set_defaults(fn=cmd_analyze)

    for name, task in (("stabilizer", "stabilizer"), ("standard-form", "standard-form"),
                       ("mrd", "mrd"), ("plane", "plane"), ("scatter", "scatter")):
        p = sub.add_parser(name, help=f"shortcut for analyze --tasks {task}")
        add_common(p)
        p.set_defaults(fn=cmd_single_task(task))

    p = sub.add_parser("equiv", help="GL or GammaL equivalence of two polynomials")
    p.add_argument("--field", required=True)
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--mode", choices=["gl", "gammal"], default="gl")
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("families", help="generate a catalog instance")
    p.add_argument("action", nargs="?", default="generate", choices=["generate"])
    p.add_argument("--family", type=int, required=True, choices=[1, 2, 3, 4, 5])
    p.add_argument("--field", default=None)
    p.add_argument("--q", dest="q_prime", type=int, default=5,
                   help="prime p when no field file is given")
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--n", type=int, default=None, required=False)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--delta", default=None)
    p.add_argument("--h", default=None)
    p.add_argument("--find-h", action="store_true", help="search for a valid h (default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=cmd_families)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "command", None) == "families" and args.field is None:
        if args.n is None:
            args.n = 2 * args.t if args.t else 6
    try:
        return args.fn(args)
    except RefusedPrecondition as exc:
        _emit({"schema_version": SCHEMA_VERSION,
               "error": {"code": exc.code, "message": str(exc)}}, sys.stderr)
        return 2
    except ScatteredLabError as exc:
        _emit({"schema_version": SCHEMA_VERSION,
               "error": {"code": exc.code, "message": str(exc)}}, sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
