"""Command-line front end.

Exit codes: 0 analysis completed (whatever the verdict), 1 internal error,
2 input error, 3 a verification check failed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from . import rep as rp
from .algebra.core import AlgebraError, SizeCapError
from .algebra.idempotents import DEFAULT_SEED, UncertifiedError, primitive_idempotents
from .algebra.io import AlgebraFormatError, load_algebra
from .algebra.modules import ModuleError, c_soc, c_top, decompose_module, min_generators
from .decide import ProfileIncomplete, Verdict, profile_algebra, profile_quiver, verdict
from .exactla import Field, FieldError
from .quiver import NotDynkinError, ParseError, classify_dynkin
from .report import Check, IndecRow, Report, Summand, digest, dumps

FIELDS = ("GF(2)", "GF(3)", "GF(5)", "QQ")
EXAMPLE_FILE = "d4out.quiver"


class InputError(Exception):
    pass


INPUT_ERRORS = (InputError, ParseError, AlgebraFormatError, FieldError, SizeCapError, AlgebraError,
                rp.RepError, ModuleError, ProfileIncomplete, NotDynkinError, UncertifiedError, OSError, UnicodeDecodeError)


# ---------------------------------------------------------------------------
# output helpers


def _use_color(stream) -> bool:
    mode = os.environ.get("KOTHE_COLOR", "auto").lower()
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


class Out:
    def __init__(self, stream=None):
        self.stream = stream or sys.stdout
        self.color = _use_color(self.stream)

    def line(self, text: str = "") -> None:
        print(text, file=self.stream)

    def flag(self, value: bool | None, yes: str = "yes", no: str = "no") -> str:
        if value is None:
            return "unknown"
        word = yes if value else no
        if not self.color:
            return word
        return f"\033[{'32' if value else '31'}m{word}\033[0m"


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")" if isinstance(v, (tuple, list)) else str(v)


# ---------------------------------------------------------------------------
# input loading


class Loaded:
    def __init__(self, path: str, raw: bytes, kind: str, field: Field, quiver=None, reps=(), doc=None):
        self.path = path
        self.raw = raw
        self.kind = kind
        self.field = field
        self.quiver = quiver
        self.reps = list(reps)
        self.doc = doc


def load_input(path: str, field_text: str | None) -> Loaded:
    raw = Path(path).read_bytes()
    text = raw.decode("utf-8")
    if text.lstrip().startswith("{"):
        doc = load_algebra(text)
        f = doc.algebra.field
        if field_text is not None and Field.parse(field_text) != f:
            raise InputError(f"--field {field_text} conflicts with the algebra file's field {f.name}")
        return Loaded(path, raw, "algebra", f, doc=doc)
    f = Field.parse(field_text or "GF(5)")
    q, reps = rp.parse_rep_document(text, f)
    return Loaded(path, raw, "rep" if reps else "quiver", f, quiver=q, reps=reps)


def _profile(inp: Loaded, seed: int, allow_partial: bool):
    if inp.quiver is not None:
        prof = profile_quiver(inp.quiver, inp.field, seed)
    else:
        doc = inp.doc
        prof = profile_algebra(doc.algebra, doc.indecomposables if doc.complete else None, seed)
    if prof.q is None and not allow_partial:
        why = "representation-infinite" if prof.representation_finite is False else "no complete list of indecomposables"
        raise InputError(f"{prof.name}: {why}; pass --allow-partial for a partial report")
    return prof


def _report(cmd: str, inp: Loaded, seed: int) -> Report:
    return Report(cmd, seed, digest(inp.raw), inp.kind, inp.field.name)


# ---------------------------------------------------------------------------
# commands


def print_verdict(out: Out, v: Verdict) -> None:
    p = v.profile
    out.line(f"algebra {p.name} over {p.field}" + (f"  [type {p.dynkin}]" if p.dynkin else ""))
    out.line(f"  provenance: {p.source}")
    out.line(f"  classes: {' '.join(p.class_labels)}   p = {_vec(p.p)}   q = {_vec(p.q) if p.q else 'unknown'}")
    out.line(f"  representation-finite: {out.flag(p.representation_finite)}   basic: {out.flag(p.basic)}")
    if v.k_tested is not None:
        out.line(f"  left {v.k_tested}-cyclic: {out.flag(v.is_k_cyclic)}")
    out.line(f"  left Koethe: {out.flag(v.is_kothe)}")
    out.line(f"  multiplicity-free top: {out.flag(v.is_mft)}   left local type: {out.flag(v.is_local_type)}")
    if v.min_cyclic_k is not None:
        out.line(f"  least k (left k-cyclic): {v.min_cyclic_k}")
        d = "n/a (not basic)" if v.sum_q_degree is None else str(v.sum_q_degree)
        out.line(f"  Koethe matrix degree: minimal {v.kothe_matrix_degree}, sum of q {d}")
        uniform = f"  every Morita-equivalent ring is left {max(p.q)}-cyclic (sharp)"
        if v.is_kothe:
            uniform += f"; max p = {v.max_p} also works"
        out.line(uniform)
    for w in v.witnesses:
        out.line(f"  witness [{w.criterion}]: {w.indecomposable} at class {w.cls}: value {w.value} > {w.bound}")


def cmd_analyze(args, out: Out) -> Report:
    inp = load_input(args.file, args.field)
    prof = _profile(inp, args.seed, args.allow_partial)
    v = verdict(prof, args.k)
    r = _report("analyze", inp, args.seed)
    r.verdicts.append(v)
    if not args.quiet:
        print_verdict(out, v)
    return r


def cmd_matrix_degree(args, out: Out) -> Report:
    inp = load_input(args.file, args.field)
    prof = _profile(inp, args.seed, False)
    v = verdict(prof, None)
    r = _report("matrix-degree", inp, args.seed)
    r.verdicts.append(v)
    if not args.quiet:
        d = "n/a (not basic)" if v.sum_q_degree is None else v.sum_q_degree
        out.line(f"{prof.name}: minimal degree {v.kothe_matrix_degree}; sum of q {d}")
    return r


def cmd_indec(args, out: Out) -> Report:
    inp = load_input(args.file, args.field)
    r = _report("indec", inp, args.seed)
    if inp.quiver is not None:
        cls = classify_dynkin(inp.quiver)
        if not cls.is_dynkin:
            raise InputError(f"{inp.quiver.name}: representation-infinite ({cls.reason})")
        labels = inp.quiver.vertices
        for k, x in enumerate(rp.enumerate_indecomposables(inp.quiver, inp.field, args.seed)):
            r.indecomposables.append(IndecRow(f"M{k + 1}", x.dim, rp.c_top(x), rp.c_soc(x)))
    else:
        doc = inp.doc
        if not doc.complete:
            raise InputError("the algebra file does not carry a complete list of indecomposables")
        system = primitive_idempotents(doc.algebra, args.seed)
        labels = tuple(str(i + 1) for i in range(system.m))
        for k, m in enumerate(doc.indecomposables):
            r.indecomposables.append(IndecRow(m.name or f"M{k + 1}", m.dim, tuple(c_top(m, system)), tuple(c_soc(m, system))))
    for row in r.indecomposables:
        big = [f"c_top[{labels[i]}]={c}" for i, c in enumerate(row.c_top) if c > 1]
        row.note = ", ".join(big)
    if not args.quiet:
        out.line(f"{len(r.indecomposables)} indecomposables (classes {' '.join(labels)})")
        for row in r.indecomposables:
            flag = f"   <- {row.note}" if row.note else ""
            out.line(f"  {row.id:>4}  dim {_vec(row.dim):<14} top {_vec(row.c_top):<14} soc {_vec(row.c_soc)}{flag}")
    return r


def cmd_decompose(args, out: Out) -> Report:
    inp = load_input(args.file, args.field)
    r = _report("decompose", inp, args.seed)
    if inp.kind == "algebra":
        system = primitive_idempotents(inp.doc.algebra, args.seed)
        for m in inp.doc.indecomposables:
            for s, mult in decompose_module(m, args.seed):
                r.summands.append(Summand(s.dim, mult, tuple(c_top(s, system))))
    else:
        if not inp.reps:
            raise InputError("no rep blocks to decompose")
        for x in inp.reps:
            for s, mult in rp.decompose(x, args.seed):
                r.summands.append(Summand(s.dim, mult, rp.c_top(s)))
    if not args.quiet:
        out.line(f"{sum(s.multiplicity for s in r.summands)} indecomposable summands")
        for s in r.summands:
            out.line(f"  {s.multiplicity} x  dim {_vec(s.dim)}  top {_vec(s.c_top)}")
    return r


# ---------------------------------------------------------------------------
# bundled worked example


def data_dir() -> Path:
    return Path(str(resources.files("kothe").joinpath("data")))


def check_integrity(root: Path, name: str) -> bytes:
    manifest = json.loads((root / "MANIFEST.json").read_text())
    raw = (root / name).read_bytes()
    want = manifest["files"].get(name)
    if want != digest(raw):
        raise InputError(f"integrity check failed for bundled file {name}")
    return raw


def example_checks(raw: bytes, field: Field, seed: int) -> tuple[list[Check], Verdict]:
    q, reps = rp.parse_rep_document(raw.decode("utf-8"), field)
    m = reps[0]
    prof = profile_quiver(q, field, seed)
    v = verdict(prof, 2)
    tag = field.name
    checks: list[Check] = []

    def add(name, anchor, ok, detail=""):
        checks.append(Check(f"{tag}: {name}", anchor, bool(ok), detail))

    top = rp.c_top(m)
    add("c_1(top M) = 2", "top of the worked representation", top[0] == 2, f"c_top = {_vec(top)}")
    add("M indecomposable", "End(M) local", rp.is_indecomposable(m, seed))
    reps_all = rp.enumerate_indecomposables(q, field, seed)
    twin = [x for x in reps_all if x.dim == m.dim]
    add("M matches the enumerated indecomposable", "Gabriel list", len(twin) == 1 and rp.is_isomorphic(m, twin[0], seed))
    kw = [w for w in v.witnesses if w.criterion == "kothe"]
    add("not left Koethe, witness at vertex 1", "q exceeds p at the centre",
        v.is_kothe is False and bool(kw) and kw[0].cls == q.vertices[0], "; ".join(f"{w.indecomposable}@{w.cls}" for w in kw))
    add("left 2-cyclic", "q <= 2p", v.is_k_cyclic is True)
    add("least k = 2", "max ceil(q/p)", v.min_cyclic_k == 2)
    add("Koethe matrix degree = 2 (sum of q = 5)", "Mat_n Koethe iff n-cyclic",
        v.kothe_matrix_degree == 2 and v.sum_q_degree == 5)
    hom_ok = all(len(rp.hom_space(rp.projective(q, field, i), x)) == rp.c_total(x)[j]
                 for j, i in enumerate(q.vertices) for x in reps_all)
    add("dim Hom(P_i, X) = c_i(X) for every indecomposable X", "Hom-length of composition factors", hom_ok)
    a = None
    gens_ok = True
    for x in reps_all:
        mod = rp.to_module(x, a)
        a = mod.algebra
        gens_ok &= min_generators(mod, primitive_idempotents(a, seed)) == max(rp.c_top(x))
    add("min generators = max c_top for every indecomposable", "generator count from the top", gens_ok)
    return checks, v


def cmd_verify(args, out: Out) -> Report:
    root = Path(args.data_dir) if args.data_dir else data_dir()
    raw = check_integrity(root, EXAMPLE_FILE)
    fields = [args.field] if args.field else list(FIELDS)
    r = Report("verify-example", args.seed, digest(raw), "bundled", ",".join(Field.parse(f).name for f in fields))
    summaries = []
    for ft in fields:
        checks, v = example_checks(raw, Field.parse(ft), args.seed)
        r.checks.extend(checks)
        r.verdicts.append(v)
        summaries.append((v.is_kothe, v.is_k_cyclic, v.min_cyclic_k, v.kothe_matrix_degree, v.profile.q))
    if len(fields) > 1:
        r.checks.append(Check("verdicts identical across fields", "field independence", len(set(summaries)) == 1))
    if not args.quiet:
        width = max(len(c.name) for c in r.checks)
        for c in r.checks:
            out.line(f"{out.flag(c.passed, 'PASS', 'FAIL')}  {c.name:<{width}}  [{c.anchor}]" + (f"  {c.detail}" if c.detail else ""))
    return r


# ---------------------------------------------------------------------------
# entry point


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("k must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="GF(p) or QQ (default GF(5); algebra files carry their own field)")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED:#x})")
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    common.add_argument("--timing", action="store_true", help="record wall-clock time (JSON is then not reproducible)")
    common.add_argument("--quiet", action="store_true", help="suppress the human-readable listing")

    p = argparse.ArgumentParser(prog="kothe", description="Decide k-cyclicity and Koethe properties of finite-dimensional algebras.")
    p.add_argument("--version", action="version", version=f"kothe {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="profile and verdicts for a quiver or algebra file")
    a.add_argument("file")
    a.add_argument("--k", type=_positive, help="also test left k-cyclicity for this k")
    a.add_argument("--allow-partial", action="store_true", help="report even when q is unknown")
    a.set_defaults(func=cmd_analyze)

    i = sub.add_parser("indec", parents=[common], help="list indecomposables with dimension, top and socle")
    i.add_argument("file")
    i.set_defaults(func=cmd_indec)

    m = sub.add_parser("matrix-degree", parents=[common], help="least n with Mat_n(A) left Koethe")
    m.add_argument("file")
    m.set_defaults(func=cmd_matrix_degree)

    d = sub.add_parser("decompose", parents=[common], help="split representations into indecomposables")
    d.add_argument("file")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify-example", parents=[common], help="check the bundled worked example over each field")
    v.add_argument("--data-dir", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # keep stdout clean when the JSON report goes there
    out = Out(sys.stderr if args.json == "-" else sys.stdout)
    err = sys.stderr
    where = getattr(args, "file", None)
    out.line(f"kothe {__version__}  seed={args.seed:#x}")
    start = time.perf_counter()
    try:
        report = args.func(args, out)
    except INPUT_ERRORS as exc:
        prefix = f"{where}:" if where and isinstance(exc, (ParseError, AlgebraFormatError)) else (f"{where}: " if where else "")
        print(f"kothe: error: {prefix}{exc}", file=err)
        return 2
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        print(f"kothe: internal error: {type(exc).__name__}: {exc}", file=err)
        return 1
    if args.timing:
        report.timing = round(time.perf_counter() - start, 6)
        out.line(f"elapsed: {report.timing:.3f}s")
    if args.json:
        text = dumps(report)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text)
    if report.checks and not all(c.passed for c in report.checks):
        print("kothe: verification failed", file=err)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
