import json

import pytest

from tetra.bialgebra import EXAMPLE_NAMES, example
from tetra.serialize import (MalformedDocument, bialgebra_from_json, bialgebra_to_json, dumps,
                             load_document, report_json, tetramodule_from_json,
                             tetramodule_to_json)
from tetra.tetramodule import build_recipe, tautological


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_bialgebra_roundtrip(name):
    b = example(name)
    doc = json.loads(dumps(bialgebra_to_json(b)))
    assert bialgebra_from_json(doc).same_structure(b)


def test_coefficients_are_strings():
    doc = bialgebra_to_json(example("sweedler"))
    assert all(isinstance(t[3], str) for t in doc["mult"])
    assert doc["field"] == {"kind": "Q"}
    assert "antipode" in doc
    assert bialgebra_to_json(example("fp3x"))["field"] == {"kind": "Fp", "p": 3}


def test_fraction_coefficients():
    doc = bialgebra_to_json(example("qz2"))
    doc["unit"] = ["2/2", "0"]
    assert bialgebra_from_json(doc).same_structure(example("qz2"))


def test_tetramodule_roundtrip_inline_and_by_path(tmp_path):
    b = example("qz3")
    m = build_recipe(b, "induce(trivco(1))")
    again = tetramodule_from_json(json.loads(dumps(tetramodule_to_json(m))))
    assert again.same_structure(m)
    (tmp_path / "qz3.json").write_text(dumps(bialgebra_to_json(b)))
    path = tmp_path / "mod.json"
    path.write_text(dumps(tetramodule_to_json(tautological(b), base_ref="qz3.json")))
    loaded = load_document(str(path))
    assert loaded.same_structure(tautological(b))


@pytest.mark.parametrize("text", [
    "{",                                              # truncated
    "[]",                                             # wrong top level
    '{"type": "bialgebra", "dim": 2}',                # missing field
    '{"type": "widget"}',
])
def test_malformed(tmp_path, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    with pytest.raises(MalformedDocument):
        load_document(str(p))


def test_bad_index_and_field():
    doc = bialgebra_to_json(example("qz2"))
    doc["mult"][0][0] = 7
    with pytest.raises(MalformedDocument):
        bialgebra_from_json(doc)
    doc = bialgebra_to_json(example("qz2"))
    doc["field"] = {"kind": "Fp", "p": 4}
    with pytest.raises(MalformedDocument):
        bialgebra_from_json(doc)


def test_report_shape():
    r = report_json("gs", [{"k": 0, "dim": 1, "valid": True}], [], None)
    assert set(r) == {"method", "degrees", "checks", "timing_ms", "tool_version"}
    assert dumps(r) == dumps(dict(r))
