"""Command-line entry point.

Exit codes: 0 success, 1 mathematical failure, 2 malformed input,
3 size guard, 4 stabilization failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .bialgebra import EXAMPLE_NAMES, Bialgebra, example, verify_bialgebra
from .exactlin import GF, QQ
from .homology import METHODS, SizeGuardError, ext, gs_cohomology
from .interchange import coherence_sweep, run_tuple
from .koszul import StabilizationError, expected_dims, sv_gs_cohomology
from .serialize import (MalformedDocument, bialgebra_to_json, dumps, load_document,
                        report_json)
from .tetramodule import verify_tetramodule

OK, FAIL, MALFORMED, GUARD, UNSTABLE = 0, 1, 2, 3, 4

# degree k collects Hom(A^m, A^n) with m + n = k, m, n >= 0; this is also the Ext degree.
# Restricting to m, n >= 1 and shifting by 2 gives the other common labeling.
DEGREE_CONVENTION = {"k": "m+n over Hom(A^m, A^n), m,n >= 0 (= Ext degree)",
                     "shifted": "m+n-2 over the m,n >= 1 pieces"}


def _write(path, doc):
    if path:
        with open(path, "w") as fh:
            fh.write(dumps(doc))


def _load_bialgebra(path):
    obj = load_document(path)
    if not isinstance(obj, Bialgebra):
        raise MalformedDocument("expected a bialgebra document")
    return obj


def _degrees(rep):
    return [{"k": k, "dim": rep.dims[k], "valid": rep.is_valid(k)} for k in sorted(rep.dims)]


def _table(rep, out=None):
    out = out or sys.stdout
    print(f"{rep.method} cohomology of {rep.base}", file=out)
    print("  k  dim", file=out)
    for k in sorted(rep.dims):
        flag = "" if rep.is_valid(k) else "  (outside validity window)"
        print(f"{k:3d}  {rep.dims[k]}{flag}", file=out)


def cmd_verify(args):
    try:
        obj = load_document(args.path)
    except MalformedDocument as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return MALFORMED
    rep = verify_bialgebra(obj) if isinstance(obj, Bialgebra) else verify_tetramodule(obj)
    print(rep)
    _write(args.out, rep.to_json())
    return OK if rep.ok else FAIL


def _cohomology_cmd(args, compute, method):
    try:
        b = _load_bialgebra(args.path)
    except MalformedDocument as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return MALFORMED
    check = verify_bialgebra(b)
    if not check.ok:
        print(check)
        return FAIL
    t0 = time.perf_counter()
    try:
        rep = compute(b)
    except SizeGuardError as exc:
        print(f"size guard: estimated cochain dimension {exc.estimate} exceeds {exc.cap}",
              file=sys.stderr)
        return GUARD
    except AssertionError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return FAIL
    ms = round(1000 * (time.perf_counter() - t0), 1) if args.timing else None
    _table(rep)
    _write(args.out, report_json(method, _degrees(rep), rep.checks, ms, base=rep.base,
                                 degree_convention=DEGREE_CONVENTION))
    return OK


def cmd_gs(args):
    return _cohomology_cmd(
        args, lambda b: gs_cohomology(b, args.max_degree, cap=args.cap, representatives=False), "gs")


def cmd_ext(args):
    def run(b):
        # same guard as the explicit complex: the bar/cobar pieces have the same size
        from .homology import _gs_size
        est = _gs_size(b.dim, args.max_degree)
        if est > args.cap:
            raise SizeGuardError(est, args.cap)
        return ext(b, args.max_degree, args.method)
    return _cohomology_cmd(args, run, args.method)


def cmd_coherence(args):
    try:
        b = _load_bialgebra(args.path)
    except MalformedDocument as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return MALFORMED
    if args.replay:
        try:
            with open(args.replay) as fh:
                spec = json.load(fh)
            results = run_tuple(b, spec)
        except (OSError, ValueError, KeyError) as exc:
            print(f"malformed input: {exc}", file=sys.stderr)
            return MALFORMED
        checks = [{"name": n, "pass": ok, "detail": d} for n, ok, d in results]
        for c in checks:
            print(f"[{'ok  ' if c['pass'] else 'FAIL'}] {c['name']}")
        _write(args.out, report_json("coherence-replay", [], checks, None, tuple=spec))
        return OK if all(c["pass"] for c in checks) else FAIL
    dumps_dir = args.dump_dir

    def on_failure(fail):
        print(f"FAIL seed {fail['seed']}: {fail['check']}", file=sys.stderr)
        if dumps_dir:
            os.makedirs(dumps_dir, exist_ok=True)
            path = os.path.join(dumps_dir, f"failure-seed{fail['seed']}.json")
            with open(path, "w") as fh:
                fh.write(dumps(fail))
        else:
            print(dumps(fail), file=sys.stderr)

    t0 = time.perf_counter()
    res = coherence_sweep(b, range(args.start, args.start + args.seeds), args.max_dim, on_failure)
    ms = round(1000 * (time.perf_counter() - t0), 1) if args.timing else None
    print(f"coherence over {b.name}: {res.tuples} tuples, {res.checks} checks, "
          f"{len(res.failures)} failures")
    checks = [{"name": "all coherence checks", "pass": res.ok,
               "count": res.checks, "failures": res.failures}]
    _write(args.out, report_json("coherence", [], checks, ms, base=b.name, tuples=res.tuples))
    return OK if res.ok else FAIL


def cmd_sv_koszul(args):
    field = QQ if not args.p else GF(args.p)
    K = args.max_degree if args.max_degree is not None else 2 * args.dimV
    t0 = time.perf_counter()
    try:
        rep = sv_gs_cohomology(args.dimV, args.truncation, K, field=field)
    except StabilizationError as exc:
        print(f"stabilization failure: {exc}", file=sys.stderr)
        return UNSTABLE
    except ValueError as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return MALFORMED
    except AssertionError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return FAIL
    ms = round(1000 * (time.perf_counter() - t0), 1) if args.timing else None
    got = [rep.dims[k] for k in range(K + 1)]
    want = expected_dims(args.dimV, K)
    match = got == want
    _table(rep)
    print(f"dims     {got}")
    print(f"formula  {want}")
    print("MATCH" if match else "MISMATCH")
    for c in rep.checks:
        print(f"[{'ok  ' if c['pass'] else 'FAIL'}] {c['name']}")
    checks = list(rep.checks) + [{"name": "matches sum_{i+j=k} C(d,i) C(d,j)", "pass": match}]
    _write(args.out, report_json("koszul", _degrees(rep), checks, ms, base=rep.base,
                                 expected=want, truncation=rep.info["N"],
                                 internal_degrees={str(k): {str(d): c for d, c in v.items()}
                                                   for k, v in rep.info["internal_degrees"].items()}))
    return OK if match and all(c["pass"] for c in rep.checks) else FAIL


def cmd_examples(args):
    if args.action == "list":
        for name in EXAMPLE_NAMES:
            print(name)
        return OK
    if args.name not in EXAMPLE_NAMES:
        print(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLE_NAMES)}",
              file=sys.stderr)
        return MALFORMED
    text = dumps(bialgebra_to_json(example(args.name)))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser():
    ap = argparse.ArgumentParser(prog="tetra", description="Tetramodules and Gerstenhaber-Schack cohomology.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the axioms of a bialgebra or tetramodule document")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    for name, fn, helptext in (("gs", cmd_gs, "explicit GS bicomplex"),
                               ("ext", cmd_ext, "Ext(A, A) in the tetramodule category")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("path")
        p.add_argument("--max-degree", type=int, default=3)
        p.add_argument("--out")
        p.add_argument("--timing", action="store_true", help="record wall time in the report")
        p.add_argument("--cap", type=int, default=10 ** 5, help="size guard on the cochain dimension")
        if name == "ext":
            p.add_argument("--method", choices=METHODS, default="bar-cobar")
        p.set_defaults(fn=fn)

    p = sub.add_parser("coherence", help="seeded 2-fold monoidal coherence sweep")
    p.add_argument("path")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--replay", help="re-run one dumped tuple")
    p.add_argument("--dump-dir", help="write failing tuples here instead of stderr")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(fn=cmd_coherence)

    p = sub.add_parser("sv-koszul", help="GS cohomology of S(V) via Koszul resolutions")
    p.add_argument("--dimV", type=int, required=True)
    p.add_argument("--truncation", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--p", type=int, default=0, help="work over F_p instead of Q")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(fn=cmd_sv_koszul)

    p = sub.add_parser("examples", help="list or emit the example bialgebras")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_examples)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "examples" and args.action == "emit" and not args.name:
        print("examples emit needs a name", file=sys.stderr)
        return MALFORMED
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
