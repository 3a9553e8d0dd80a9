import json

import pytest

from tetra.bialgebra import EXAMPLE_NAMES, example
from tetra.cli import main
from tetra.serialize import bialgebra_to_json, dumps


@pytest.fixture
def zoo(tmp_path):
    def emit(name):
        p = tmp_path / f"{name}.json"
        assert main(["examples", "emit", name, "-o", str(p)]) == 0
        return str(p)
    return emit


def test_examples_list(capsys):
    assert main(["examples", "list"]) == 0
    assert capsys.readouterr().out.split() == list(EXAMPLE_NAMES)


def test_examples_unknown():
    assert main(["examples", "emit", "octonions"]) == 2


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_every_example_verifies(zoo, name):
    assert main(["verify", zoo(name)]) == 0


def test_emitted_sweedler_has_antipode(zoo):
    doc = json.load(open(zoo("sweedler")))
    assert len(doc["antipode"]) == 4


def test_verify_failure_and_malformed(tmp_path, capsys):
    doc = bialgebra_to_json(example("qz3"))
    doc["mult"] = [t for t in doc["mult"] if t[:2] != [1, 2]] + [[1, 2, 1, "1"]]
    bad = tmp_path / "bad.json"
    bad.write_text(dumps(doc))
    assert main(["verify", str(bad)]) == 1
    assert "associativity" in capsys.readouterr().out
    trunc = tmp_path / "trunc.json"
    trunc.write_text(dumps(doc)[:40])
    assert main(["verify", str(trunc)]) == 2


def test_gs_table_and_report(zoo, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["gs", zoo("qz2"), "--max-degree", "4", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert [d["k"] for d in rep["degrees"]] == [0, 1, 2, 3]
    assert [d["dim"] for d in rep["degrees"]] == [1, 0, 0, 0]
    assert rep["timing_ms"] is None and rep["method"] == "gs"
    assert "k  dim" in capsys.readouterr().out


def test_trivial_five(zoo, tmp_path):
    out = tmp_path / "r.json"
    assert main(["gs", zoo("trivial"), "--max-degree", "5", "--out", str(out)]) == 0
    assert [d["dim"] for d in json.loads(out.read_text())["degrees"]] == [1, 0, 0, 0, 0]


def test_size_guard_exit(zoo, capsys):
    assert main(["gs", zoo("sweedler"), "--max-degree", "9"]) == 3
    assert "exceeds" in capsys.readouterr().err
    assert main(["ext", zoo("sweedler"), "--max-degree", "9"]) == 3


def test_ext_matches_gs(zoo, tmp_path):
    dims = []
    for args in (["gs"], ["ext", "--method", "bar-cobar"], ["ext", "--method", "canonical"]):
        out = tmp_path / "r.json"
        assert main(args[:1] + [zoo("fp2x"), "--max-degree", "3", "--out", str(out)] + args[1:]) == 0
        rep = json.loads(out.read_text())
        dims.append([d["dim"] for d in rep["degrees"]])
    assert dims[0] == dims[1] == dims[2] == [1, 2, 3]


def test_reports_are_byte_deterministic(zoo, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    path = zoo("qz3")
    main(["ext", path, "--max-degree", "3", "--method", "canonical", "--out", str(a)])
    main(["ext", path, "--max-degree", "3", "--method", "canonical", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_timing_flag(zoo, tmp_path):
    out = tmp_path / "r.json"
    main(["gs", zoo("qz2"), "--max-degree", "3", "--timing", "--out", str(out)])
    assert json.loads(out.read_text())["timing_ms"] >= 0


def test_coherence_and_replay(zoo, tmp_path, capsys):
    path = zoo("qz2")
    out = tmp_path / "c.json"
    assert main(["coherence", path, "--seeds", "2", "--max-dim", "3", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["checks"][0]["count"] == 30
    from tetra.interchange import tuple_recipes
    spec = tmp_path / "t.json"
    spec.write_text(json.dumps(tuple_recipes(example("qz2"), 1)))
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["coherence", path, "--replay", str(spec), "--out", str(r1)]) == 0
    assert main(["coherence", path, "--replay", str(spec), "--out", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    spec.write_text("{}")
    assert main(["coherence", path, "--replay", str(spec)]) == 2


def test_coherence_failure_dumps_tuple(zoo, tmp_path, monkeypatch):
    import tetra.interchange as ic
    from test_interchange import BentInterchange
    monkeypatch.setattr(ic, "Interchange", BentInterchange)
    dump = tmp_path / "dumps"
    assert main(["coherence", zoo("qz2"), "--seeds", "1", "--dump-dir", str(dump)]) == 1
    files = list(dump.iterdir())
    assert files
    fail = json.loads(files[0].read_text())
    assert fail["seed"] == 0 and len(fail["recipes"]) == 6


def test_sv_koszul(capsys):
    assert main(["sv-koszul", "--dimV", "1"]) == 0
    out = capsys.readouterr().out
    assert "MATCH" in out and "[1, 2, 1]" in out
    assert main(["sv-koszul", "--dimV", "2", "--max-degree", "2"]) == 0
    assert main(["sv-koszul", "--dimV", "1", "--max-degree", "7"]) == 2


def test_sv_koszul_unstable(monkeypatch):
    import tetra.cli as cli
    from tetra.koszul import StabilizationError

    def boom(*a, **k):
        raise StabilizationError("truncation 5 gives ..., 6 gives ...")

    monkeypatch.setattr(cli, "sv_gs_cohomology", boom)
    assert main(["sv-koszul", "--dimV", "1"]) == 4


def test_sv_koszul_mismatch(monkeypatch):
    import tetra.cli as cli
    monkeypatch.setattr(cli, "expected_dims", lambda d, K: [1, 2, 2])
    assert main(["sv-koszul", "--dimV", "1"]) == 1
