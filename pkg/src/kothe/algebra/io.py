"""JSON document format for structure-constant algebras and their modules.

    {"format": "fd-algebra-v1", "name": ..., "field": "GF(3)", "dim": n,
     "labels": [...], "unit": [...], "structure": [[i, j, [coords]], ...],
     "indecomposables": {"complete": bool, "modules": [{"name", "dim", "action"}]}}

Only nonzero products are listed.  Rationals are written as "n/d" strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from ..exactla import Field, FieldError, Mat
from .core import AlgebraError, FDAlgebra, check_size
from .modules import AModule, ModuleError

FORMAT = "fd-algebra-v1"


class AlgebraFormatError(ValueError):
    pass


@dataclass
class AlgebraDocument:
    algebra: FDAlgebra
    indecomposables: list[AModule] = dc_field(default_factory=list)
    complete: bool = False


def _scalar(f: Field, x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise AlgebraFormatError(f"{where}: expected an integer or 'n/d' string, got {x!r}")
    try:
        return f(x)
    except (ValueError, ZeroDivisionError, FieldError) as exc:
        raise AlgebraFormatError(f"{where}: {exc}") from None


def _vector(f: Field, xs, n: int, where: str) -> list:
    if not isinstance(xs, list) or len(xs) != n:
        raise AlgebraFormatError(f"{where}: expected a list of {n} entries")
    return [_scalar(f, x, where) for x in xs]


def load_algebra(text: str) -> AlgebraDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise AlgebraFormatError(f"not an {FORMAT} document")
    try:
        f = Field.parse(str(doc["field"]))
        n = doc["dim"]
        if not isinstance(n, int) or n < 1:
            raise AlgebraFormatError("dim must be a positive integer")
        check_size(f, n)
        labels = doc.get("labels") or [f"b{i}" for i in range(n)]
        if len(labels) != n:
            raise AlgebraFormatError("labels: wrong length")
        unit = _vector(f, doc["unit"], n, "unit")
        table = [[[] for _ in range(n)] for _ in range(n)]
        seen = set()
        for entry in doc["structure"]:
            if not (isinstance(entry, list) and len(entry) == 3):
                raise AlgebraFormatError("structure entries are [i, j, coords] triples")
            i, j, coords = entry
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < n and 0 <= j < n):
                raise AlgebraFormatError(f"structure index out of range: {entry[:2]}")
            if (i, j) in seen:
                raise AlgebraFormatError(f"product ({i}, {j}) listed twice")
            seen.add((i, j))
            table[i][j] = list(enumerate(_vector(f, coords, n, f"structure[{i},{j}]")))
        alg = FDAlgebra(f, table, unit, labels=labels, name=str(doc.get("name", "")))
        mods = []
        extra = doc.get("indecomposables") or {}
        for k, md in enumerate(extra.get("modules", [])):
            d = md["dim"]
            action = []
            for t, mat in enumerate(md["action"]):
                if len(mat) != d:
                    raise AlgebraFormatError(f"module {k}, action {t}: expected {d} rows")
                action.append(Mat(f, [_vector(f, row, d, f"module {k}") for row in mat], d, d))
            mods.append(AModule(alg, d, action, name=str(md.get("name", f"M{k}"))))
        return AlgebraDocument(alg, mods, bool(extra.get("complete", False)))
    except KeyError as exc:
        raise AlgebraFormatError(f"missing key {exc.args[0]!r}") from None
    except (AlgebraError, ModuleError, FieldError) as exc:
        raise AlgebraFormatError(str(exc)) from None


def algebra_to_json(doc: AlgebraDocument | FDAlgebra) -> dict:
    if isinstance(doc, FDAlgebra):
        doc = AlgebraDocument(doc)
    a = doc.algebra
    f = a.field
    structure = []
    for i in range(a.dim):
        for j in range(a.dim):
            if a.table[i][j]:
                structure.append([i, j, [f.to_json(x) for x in a.dense_product(i, j)]])
    out = {
        "format": FORMAT,
        "name": a.name,
        "field": f.name,
        "dim": a.dim,
        "labels": list(a.labels),
        "unit": [f.to_json(x) for x in a.unit],
        "structure": structure,
    }
    if doc.indecomposables or doc.complete:
        out["indecomposables"] = {
            "complete": doc.complete,
            "modules": [
                {"name": m.name, "dim": m.dim, "action": [[[f.to_json(x) for x in r] for r in mat.data] for mat in m.action]}
                for m in doc.indecomposables
            ],
        }
    return out


def dump_algebra(doc: AlgebraDocument | FDAlgebra) -> str:
    return json.dumps(algebra_to_json(doc), indent=1, sort_keys=True) + "\n"
