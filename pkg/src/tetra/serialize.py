"""JSON documents for bialgebras, tetramodules and reports.

Coefficients are written as strings (``"3"``, ``"-1/2"``) so exact values
survive the round trip.
"""

from __future__ import annotations

import json
import os

from . import __version__
from .bialgebra import Bialgebra, _from_tables
from .exactlin import FieldSpec, Mat
from .tetramodule import Tetramodule

__all__ = ["MalformedDocument", "bialgebra_to_json", "bialgebra_from_json",
           "tetramodule_to_json", "tetramodule_from_json", "load_document",
           "report_json", "dumps"]


class MalformedDocument(ValueError):
    pass


def _c(x) -> str:
    return str(x)


def bialgebra_to_json(b: Bialgebra) -> dict:
    n = b.dim
    mult = []
    for k, col, v in b.mult.entries():
        i, j = divmod(col, n)
        mult.append([i, j, k, _c(v)])
    mult.sort()
    comult = []
    for row, i, v in b.comult.entries():
        j, k = divmod(row, n)
        comult.append([i, j, k, _c(v)])
    comult.sort()
    doc = {
        "type": "bialgebra",
        "name": b.name,
        "field": b.field.to_json(),
        "dim": n,
        "mult": mult,
        "comult": comult,
        "unit": [_c(b.unit[i, 0]) for i in range(n)],
        "counit": [_c(b.counit[0, i]) for i in range(n)],
    }
    if b.antipode is not None:
        doc["antipode"] = [[_c(x) for x in r] for r in b.antipode.to_lists()]
    return doc


def bialgebra_from_json(doc: dict) -> Bialgebra:
    try:
        field = FieldSpec.from_json(doc["field"])
        n = int(doc["dim"])
        if n < 1:
            raise MalformedDocument("dim must be positive")
        mult = [(int(i), int(j), int(k), field.convert(c)) for i, j, k, c in doc["mult"]]
        comult = [(int(i), int(j), int(k), field.convert(c)) for i, j, k, c in doc["comult"]]
        unit = [field.convert(c) for c in doc["unit"]]
        counit = [field.convert(c) for c in doc["counit"]]
        if len(unit) != n or len(counit) != n:
            raise MalformedDocument("unit and counit need dim entries")
        for t in mult + comult:
            if not all(0 <= x < n for x in t[:3]):
                raise MalformedDocument(f"basis index out of range in {t[:3]}")
        anti = None
        if doc.get("antipode") is not None:
            rows = doc["antipode"]
            if len(rows) != n or any(len(r) != n for r in rows):
                raise MalformedDocument("antipode must be a dim x dim matrix")
            anti = [(i, j, field.convert(x)) for i, r in enumerate(rows) for j, x in enumerate(r)]
        return _from_tables(field, n, mult, comult, unit, counit, anti, name=doc.get("name", ""))
    except MalformedDocument:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedDocument(f"bad bialgebra document: {exc!r}") from None


_MAPS = ("act_l", "act_r", "coact_l", "coact_r")


def _mat_triples(m: Mat) -> list:
    return [[i, j, _c(v)] for i, j, v in m.entries()]


def tetramodule_to_json(m: Tetramodule, base_ref=None) -> dict:
    """``base_ref`` is a path to the bialgebra document; if omitted the
    bialgebra is inlined."""
    doc = {"type": "tetramodule", "name": m.name, "dim": m.dim,
           "bialgebra": base_ref if base_ref is not None else bialgebra_to_json(m.base)}
    for k in _MAPS:
        doc[k] = _mat_triples(getattr(m, k))
    return doc


def tetramodule_from_json(doc: dict, relative_to: str | None = None) -> Tetramodule:
    try:
        ref = doc["bialgebra"]
        if isinstance(ref, str):
            path = ref
            if relative_to and not os.path.isabs(path):
                path = os.path.join(os.path.dirname(relative_to), path)
            with open(path) as fh:
                b = bialgebra_from_json(json.load(fh))
        else:
            b = bialgebra_from_json(ref)
        d = int(doc["dim"])
        n, f = b.dim, b.field
        shapes = {"act_l": (d, n * d), "act_r": (d, d * n),
                  "coact_l": (n * d, d), "coact_r": (d * n, d)}
        maps = {}
        for k in _MAPS:
            r, c = shapes[k]
            maps[k] = Mat.from_entries(f, r, c, ((int(i), int(j), f.convert(v))
                                                 for i, j, v in doc[k]))
        return Tetramodule(b, d, maps["act_l"], maps["act_r"], maps["coact_l"],
                           maps["coact_r"], name=doc.get("name", ""))
    except MalformedDocument:
        raise
    except (KeyError, TypeError, ValueError, IndexError, OSError, ZeroDivisionError) as exc:
        raise MalformedDocument(f"bad tetramodule document: {exc!r}") from None


def load_document(path: str):
    """Parse a file into a :class:`Bialgebra` or :class:`Tetramodule`."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedDocument(f"cannot read {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("top level must be an object")
    kind = doc.get("type") or ("tetramodule" if "act_l" in doc else "bialgebra")
    if kind == "tetramodule":
        return tetramodule_from_json(doc, relative_to=path)
    if kind == "bialgebra":
        return bialgebra_from_json(doc)
    raise MalformedDocument(f"unknown document type {kind!r}")


def report_json(method: str, degrees: list, checks: list, timing_ms=None, **extra) -> dict:
    out = {"method": method, "degrees": degrees, "checks": checks,
           "timing_ms": timing_ms, "tool_version": __version__}
    out.update(extra)
    return out


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
