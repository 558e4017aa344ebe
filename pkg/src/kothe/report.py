"""Versioned JSON reports (schema ``report-v1``) with exact round-tripping.

Timing is kept out of the canonical JSON unless explicitly requested, so a
fixed input and seed always produce byte-identical output.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Any

from . import __version__
from .decide import AlgebraProfile, IndecSummary, Verdict, Witness

SCHEMA = "report-v1"
SCOPE = "finite-dimensional algebras over exact fields (GF(p), QQ)"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def schema() -> dict:
    return json.loads(resources.files("kothe").joinpath("data", "report-v1.schema.json").read_text())


@dataclass
class IndecRow:
    id: str
    dim: tuple[int, ...] | int
    c_top: tuple[int, ...]
    c_soc: tuple[int, ...]
    note: str = ""


@dataclass
class Summand:
    dim: tuple[int, ...] | int
    multiplicity: int
    c_top: tuple[int, ...]


@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    command: str
    seed: int
    input_digest: str
    input_kind: str
    field: str
    verdicts: list[Verdict] = dc_field(default_factory=list)
    indecomposables: list[IndecRow] = dc_field(default_factory=list)
    summands: list[Summand] = dc_field(default_factory=list)
    checks: list[Check] = dc_field(default_factory=list)
    tool_version: str = __version__
    timing: float | None = None


# ---------------------------------------------------------------------------
# to JSON


def _dim(d):
    return list(d) if isinstance(d, tuple) else d


def _undim(d):
    return tuple(d) if isinstance(d, list) else d


def _tup(x):
    return None if x is None else tuple(x)


def profile_json(p: AlgebraProfile) -> dict:
    return {
        "name": p.name,
        "field": p.field,
        "m": p.m,
        "p": list(p.p),
        "q": None if p.q is None else list(p.q),
        "representation_finite": p.representation_finite,
        "basic": p.basic,
        "source": p.source,
        "class_labels": list(p.class_labels),
        "dynkin": p.dynkin,
        "indecomposables": [{"id": s.id, "dim": _dim(s.dim), "c_top": list(s.c_top)} for s in p.indecomposables],
    }


def verdict_json(v: Verdict) -> dict:
    kothe = v.is_kothe
    q = v.profile.q
    return {
        "algebra": v.algebra,
        "k_tested": v.k_tested,
        "is_k_cyclic": v.is_k_cyclic,
        "is_kothe": v.is_kothe,
        "is_mft": v.is_mft,
        "is_local_type": v.is_local_type,
        "min_cyclic_k": v.min_cyclic_k,
        "kothe_matrix_degree": {"minimal": v.kothe_matrix_degree, "sum_q": v.sum_q_degree},
        # k valid for every Morita-equivalent ring: the sharp max q, and max p when Koethe
        "morita_uniform_k": {
            "sharp_max_q": None if q is None else max(q),
            "max_p_if_kothe": v.max_p if kothe else None,
        },
        "profile": profile_json(v.profile),
        "witnesses": [
            {"criterion": w.criterion, "indecomposable": w.indecomposable, "class": w.cls, "value": w.value, "bound": w.bound}
            for w in v.witnesses
        ],
    }


def report_json(r: Report) -> dict:
    out: dict[str, Any] = {
        "schema": SCHEMA,
        "tool": {"name": "kothe", "version": r.tool_version},
        "command": r.command,
        "seed": r.seed,
        "scope": SCOPE,
        "input": {"digest": r.input_digest, "kind": r.input_kind, "field": r.field},
        "verdicts": [verdict_json(v) for v in r.verdicts],
        "indecomposables": [
            {"id": x.id, "dim": _dim(x.dim), "c_top": list(x.c_top), "c_soc": list(x.c_soc), "note": x.note}
            for x in r.indecomposables
        ],
        "summands": [{"dim": _dim(s.dim), "multiplicity": s.multiplicity, "c_top": list(s.c_top)} for s in r.summands],
        "checks": [{"name": c.name, "anchor": c.anchor, "passed": c.passed, "detail": c.detail} for c in r.checks],
    }
    if r.timing is not None:
        out["timing"] = {"seconds": r.timing}
    return out


def dumps(r: Report) -> str:
    return json.dumps(report_json(r), indent=2, sort_keys=True, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# from JSON


def _profile(d: dict) -> AlgebraProfile:
    return AlgebraProfile(
        d["name"], d["field"], d["m"], tuple(d["p"]), _tup(d["q"]), d["representation_finite"], d["basic"],
        d["source"], tuple(d["class_labels"]),
        tuple(IndecSummary(s["id"], _undim(s["dim"]), tuple(s["c_top"])) for s in d["indecomposables"]),
        d["dynkin"],
    )


def _verdict(d: dict) -> Verdict:
    prof = _profile(d["profile"])
    return Verdict(
        d["algebra"], prof, d["k_tested"], d["is_k_cyclic"], d["is_kothe"], d["is_mft"], d["is_local_type"],
        d["min_cyclic_k"], d["kothe_matrix_degree"]["minimal"], d["kothe_matrix_degree"]["sum_q"], max(prof.p),
        [Witness(w["criterion"], w["indecomposable"], w["class"], w["value"], w["bound"]) for w in d["witnesses"]],
    )


def loads(text: str) -> Report:
    d = json.loads(text)
    if d.get("schema") != SCHEMA:
        raise ValueError(f"not a {SCHEMA} report")
    return Report(
        command=d["command"],
        seed=d["seed"],
        input_digest=d["input"]["digest"],
        input_kind=d["input"]["kind"],
        field=d["input"]["field"],
        verdicts=[_verdict(v) for v in d["verdicts"]],
        indecomposables=[IndecRow(x["id"], _undim(x["dim"]), tuple(x["c_top"]), tuple(x["c_soc"]), x["note"]) for x in d["indecomposables"]],
        summands=[Summand(_undim(s["dim"]), s["multiplicity"], tuple(s["c_top"])) for s in d["summands"]],
        checks=[Check(c["name"], c["anchor"], c["passed"], c["detail"]) for c in d["checks"]],
        tool_version=d["tool"]["version"],
        timing=d["timing"]["seconds"] if "timing" in d else None,
    )
