import json

import pytest

import tetra.interchange as ic
from tetra.bialgebra import example
from tetra.exactlin import Mat, perm_matrix
from tetra.interchange import (EtaConstructionError, EtaResult, Interchange,
                               check_external_assoc, check_internal_assoc, check_naturality,
                               check_unit_conditions, coherence_sweep, eta, phi0, run_tuple,
                               tuple_recipes, twelve_left, twelve_right)
from tetra.tetramodule import TetraMap, build_recipe, random_map, tautological


def objects(name, seed, k=6):
    b = example(name)
    spec = tuple_recipes(b, seed)
    return b, [build_recipe(b, r) for r in spec["recipes"][:k]]


class BentInterchange(Interchange):
    """eta plus a single stray matrix unit: still a linear map, no longer the
    canonical one."""

    def _build(self, m, n, p, q):
        r = super()._build(m, n, p, q)
        X = r.matrix
        E = Mat.from_entries(X.field, X.nrows, X.ncols, [(0, X.ncols - 1, 1)])
        return EtaResult(TetraMap(r.map.source, r.map.target, X + E), r.src, r.tgt, r.steps)


@pytest.mark.parametrize("name", ["qz2", "fp2x", "qz3", "sweedler"])
def test_phi0_is_a_tetramodule_map(name):
    b = example(name)
    A = tautological(b)
    assert phi0(A, A, A, A).verify().ok


def test_eta_steps_and_diagnostics():
    b, (u, v, w, x, *_) = objects("qz2", 1)
    e = eta(u, v, w, x)
    assert e.steps.ok
    assert e.map.verify().ok
    d = e.diagnostics()
    assert d["source_dim"] == e.matrix.ncols and d["rank"] <= min(d["source_dim"], d["target_dim"])


def test_eta_on_tautological_objects_is_an_isomorphism():
    # by the unit lemma both sides collapse to a copy of A
    b = example("qz3")
    A = tautological(b)
    d = eta(A, A, A, A).diagnostics()
    assert d["source_dim"] == d["target_dim"] == 3
    assert d["injective"] and d["surjective"]


@pytest.mark.parametrize("name", ["qz2", "fp2x", "dual-qz2"])
def test_unit_conditions_and_twelve(name):
    b, (u, v, *_) = objects(name, 2)
    ctx = Interchange(b)
    assert check_unit_conditions(u, v, ctx).ok
    l1, l2 = twelve_left(u, v, ctx)
    r1, r2 = twelve_right(u, v, ctx)
    assert l1 == l2 and r1 == r2


@pytest.mark.parametrize("name", ["qz2", "fp2x"])
def test_associativity_diagrams(name):
    b, objs = objects(name, 3)
    ctx = Interchange(b)
    assert check_internal_assoc(*objs, ctx=ctx)
    assert check_external_assoc(*objs, ctx=ctx)


def test_naturality_all_positions():
    b, (u, v, w, x, *_) = objects("fp2x", 4)
    import random
    tgt = build_recipe(b, "taut + taut")
    f = random_map(u, tgt, random.Random(0))
    assert not f.matrix.is_zero()
    ctx = Interchange(b)
    for pos in (1, 2, 3, 4):
        assert check_naturality(f, pos, [v, w, x], ctx)
    with pytest.raises(ValueError):
        check_naturality(f, 5, [v, w, x], ctx)


def test_bent_eta_is_caught():
    b, objs = objects("qz2", 0)
    u, v = objs[:2]
    ctx = BentInterchange(b)
    assert not check_unit_conditions(u, v, ctx).ok
    l1, l2 = twelve_left(u, v, ctx)
    assert l1 != l2
    assert not check_internal_assoc(*objs, ctx=BentInterchange(b))


def test_bent_eta_breaks_naturality():
    import random
    b = example("fp2x")
    A = tautological(b)
    tgt = build_recipe(b, "taut + taut")
    f = random_map(A, tgt, random.Random(1))
    assert not check_naturality(f, 1, [A, A, A], BentInterchange(b))


def test_unswapped_phi0_fails_construction(monkeypatch):
    def no_swap(m, n, p, q):
        src = ic.boxtimes1(ic.boxtimes2(m, n), ic.boxtimes2(p, q))
        tgt = ic.boxtimes2(ic.boxtimes1(m, p), ic.boxtimes1(n, q))
        P = perm_matrix(m.base.field, [m.dim, n.dim, p.dim, q.dim], (0, 1, 2, 3))
        return TetraMap(src, tgt, P)

    monkeypatch.setattr(ic, "phi0", no_swap)
    b = example("qz2")
    A = tautological(b)
    with pytest.raises(EtaConstructionError):
        eta(A, A, A, A, verify_phi0=True)


def test_sweep_and_replay_are_deterministic():
    b = example("qz2")
    res = coherence_sweep(b, range(3))
    assert res.ok and res.tuples == 3 and res.checks == 45
    spec = json.loads(json.dumps(tuple_recipes(b, 1)))
    first = run_tuple(b, spec)
    second = run_tuple(b, spec)
    assert first == second
    digest = dict((n, d) for n, _, d in first)["eta construction"]["eta_digest"]
    assert len(digest) == 16


def test_sweep_reports_failures(monkeypatch):
    b = example("qz2")
    monkeypatch.setattr(ic, "Interchange", BentInterchange)
    seen = []
    res = coherence_sweep(b, [0], on_failure=seen.append)
    assert not res.ok
    assert seen and seen[0]["seed"] == 0 and "recipes" in seen[0]
