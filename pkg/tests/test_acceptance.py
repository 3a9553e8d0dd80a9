"""One test per acceptance criterion, each at its stated tolerance (exact).

Every test records its outcome in ``RESULTS``; the conftest prints one
PASS/FAIL line per criterion at the end of the run, and running this file
directly does the same.
"""

import json
import time

import pytest

from tetra.bialgebra import EXAMPLE_NAMES, example
from tetra.cli import main
from tetra.exactlin import kronecker, rank
from tetra.homology import ext, gs_check_d_squared, gs_cohomology
from tetra.interchange import coherence_sweep
from tetra.koszul import sv_gs_cohomology
from tetra.serialize import bialgebra_to_json, dumps
from tetra.tensor import (adjunction_check, adjunction_check2, canonical_epi, check_unit_isos,
                          coinduce, induce, unit_isos)
from tetra.tetramodule import (forget1, forget2, hom_space, kernel_tetra, sample_tetramodule,
                               tautological, trivial_bicomodule, trivial_bimodule,
                               verify_tetramodule)

RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    assert ok, detail


def test_criterion_1_symmetric_algebra(capsys):
    t0 = time.perf_counter()
    got, zero, checks, cli = {}, True, True, True
    for d in (1, 2):
        rep = sv_gs_cohomology(d)
        got[d] = [rep.dims[k] for k in range(2 * d + 1)]
        zero &= all(c["pass"] for c in rep.checks if c["name"] == "Hom differential is zero")
        checks &= all(c["pass"] for c in rep.checks)
        cli &= main(["sv-koszul", "--dimV", str(d)]) == 0
        cli &= "MATCH" in capsys.readouterr().out
    ok = got == {1: [1, 2, 1], 2: [1, 4, 6, 4, 1]} and zero and checks and cli
    record(1, ok, f"dims {got}, zero Hom differential {zero}, resolution checks {checks}, "
                  f"cli {cli}, {time.perf_counter() - t0:.1f}s")


THREE_WAY = ["qz2", "qz3", "fp2x", "fp3x", "sweedler"]


def test_criterion_2_three_way_agreement():
    t0 = time.perf_counter()
    table = {}
    for name in THREE_WAY:
        b = example(name)
        g = gs_cohomology(b, 3, representatives=False)
        e1 = ext(b, 3, "bar-cobar")
        e2 = ext(b, 3, "canonical")
        table[name] = [[r.dims[k] for k in range(3)] for r in (g, e1, e2)]
    ok = all(a == b == c for a, b, c in table.values())
    record(2, ok, f"{ {k: v[0] for k, v in table.items()} } in {time.perf_counter() - t0:.1f}s")


def test_criterion_3_d_squared():
    t0 = time.perf_counter()
    bad = {}
    for name in EXAMPLE_NAMES:
        b = example(name)
        top = 5 if b.dim >= 4 else 6
        out = gs_check_d_squared(b, top)
        if not out["ok"]:
            bad[name] = out["failures"]
    record(3, not bad, f"failures {bad or 'none'} in {time.perf_counter() - t0:.1f}s")


def test_criterion_4_coherence():
    t0 = time.perf_counter()
    summary = {}
    fails = []
    for name in ("qz2", "fp2x"):
        res = coherence_sweep(example(name), range(100), max_dim=3)
        summary[name] = (res.tuples, res.checks, len(res.failures))
        fails += res.failures
    record(4, not fails, f"(tuples, checks, failures) {summary} in {time.perf_counter() - t0:.1f}s")


def test_criterion_5_unit_lemma():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for name in EXAMPLE_NAMES:
        b = example(name)
        for s in range(20):
            m = sample_tetramodule(b, s)
            if not verify_tetramodule(m).ok:
                bad.append((name, s, "sample"))
                continue
            isos = unit_isos(m, check=False)
            rep = check_unit_isos(m, isos)
            # the products with A recover m: same dimension, and the stored
            # isomorphism carries the product structure onto m's
            same_dim = all(u.witness.dim == m.dim for u in isos.values())
            if not (rep.ok and same_dim):
                bad.append((name, s, [c.name for c in rep.failures()]))
            count += 1
    record(5, not bad, f"{count} objects, failures {bad or 'none'} in {time.perf_counter() - t0:.1f}s")


def test_criterion_6_trivial_bialgebra(tmp_path):
    b = example("trivial")
    dims = {
        "gs": [gs_cohomology(b, 5).dims[k] for k in range(5)],
        "bar-cobar": [ext(b, 5, "bar-cobar").dims[k] for k in range(5)],
        "canonical": [ext(b, 5, "canonical").dims[k] for k in range(5)],
    }
    path = tmp_path / "trivial.json"
    path.write_text(dumps(bialgebra_to_json(b)))
    out = tmp_path / "r.json"
    main(["gs", str(path), "--max-degree", "3", "--out", str(out)])
    dims["cli gs"] = [d["dim"] for d in json.loads(out.read_text())["degrees"]]
    ok = all(v == [1] + [0] * (len(v) - 1) for v in dims.values())
    record(6, ok, str(dims))


def _ses_of_induced(x):
    """``0 -> L F1 X0 -> L F1 L F1 x -> L F1 x -> 0`` from the canonical epi
    ``L F1 x -> x`` with kernel ``X0``; returns objects and the two maps."""
    b = x.base
    I = b.identity()
    epi = canonical_epi(x)
    X0, inc = kernel_tetra(epi)
    sub = induce(forget1(X0))
    mid = induce(forget1(epi.source))
    quo = induce(forget1(x))
    i = kronecker([I, inc.matrix, I])
    p = kronecker([I, epi.matrix, I])
    return sub, mid, quo, i, p


def test_criterion_7_adjunction_and_exactness():
    t0 = time.perf_counter()
    bad = []
    names = ["qz2", "qz3", "fp2x", "fp3x", "dual-qz2"]
    for s in range(50):
        b = example(names[s % len(names)])
        x = sample_tetramodule(b, 500 + s, max_dim=2 * b.dim)
        n = forget1(sample_tetramodule(b, 900 + s, max_dim=b.dim)) if s % 2 else trivial_bicomodule(b, 1 + s % 3)
        m = forget2(sample_tetramodule(b, 700 + s, max_dim=b.dim)) if s % 3 else trivial_bimodule(b, 1)
        if not (adjunction_check(n, x) and adjunction_check2(x, m)):
            bad.append(("adjunction", b.name, s))
    ses = 0
    for s in range(20):
        b = example(["qz2", "fp2x"][s % 2])
        x = sample_tetramodule(b, 300 + s, max_dim=2)
        sub, mid, quo, i, p = _ses_of_induced(x)
        exact = ((p @ i).is_zero() and rank(i) == sub.dim and rank(p) == quo.dim
                 and sub.dim + quo.dim == mid.dim)
        M = trivial_bimodule(b, 1) if s % 2 else forget2(tautological(b))
        R = coinduce(M)
        h = [hom_space(o, R).dim for o in (sub, mid, quo)]
        if not (exact and h[1] == h[0] + h[2]):
            bad.append(("additivity", b.name, s, h))
        ses += 1
    record(7, not bad, f"50 adjunction instances, {ses} sequences, failures {bad or 'none'} "
                       f"in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    import sys
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
