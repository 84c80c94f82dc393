from __future__ import annotations

import argparse
import json
import logging
import os
import sqlite3
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from algebra.checks import FLAGS, check_ipo
from algebra.errors import (
    BudgetExceeded,
    DocumentError,
    ExportError,
    IpoError,
    StructureError,
)
from core.config import load_config, set_config_value
from core.log import configure_logging
from decomposition.decompose import decompose
from duality.dual import dualize, is_isomorphic_dual, primalize
from enumeration.canonical import find_isomorphism
from enumeration.classes import AlgebraClass, classify
from enumeration.enumerate import ROUTES, EnumerationResult, enumerate_algebras
from glueing.constructions import extend_to_monoid, glue_linear, subreduct_conditions
from glueing.glue import GlueOutcome, glue
from store.sqlite_store import EnumerationStore
from ui.diagram import MODES, export_diagram
from ui.documents import AlgebraDocument, read_document, serialize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class _Context:
    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        io_cfg = load_config().get("io", {})
        self.strict = bool(args.strict or io_cfg.get("strict", False))
        self.format = args.format or str(io_cfg.get("format", "table"))

    def read(self, path: str, kind: str) -> AlgebraDocument:
        doc = read_document(path, self.strict)
        if doc.kind != kind:
            raise DocumentError(f"{path}: expected a {kind} document, got {doc.kind}")
        return doc

    def emit(self, payload: Any, **metadata: Any) -> None:
        sys.stdout.write(serialize(AlgebraDocument.wrap(payload, **metadata)))

    def emit_json(self, data: Any) -> None:
        print(json.dumps(data, ensure_ascii=False, indent=2))


# --- commands ---
def _cmd_check(ctx: _Context) -> int:
    alg = ctx.read(ctx.args.file, "algebra").payload
    report = check_ipo(alg)  # type: ignore[arg-type]
    if ctx.format == "json":
        ctx.emit_json({
            "flags": report.flags,
            "witnesses": {k: list(v) for k, v in report.witnesses.items()},
            "unit": report.unit,
        })
    else:
        for flag in FLAGS:
            mark = "true" if report[flag] else "false"
            witness = report.witnesses.get(flag)
            print(f"{flag:22s} {mark}" + (f"  witness={list(witness)}" if witness else ""))
        if report.unit is not None:
            print(f"{'global identity':22s} {report.unit}")
    return EXIT_OK if report["ipo_semigroup"] else EXIT_NEGATIVE


def _cmd_classify(ctx: _Context) -> int:
    alg = ctx.read(ctx.args.file, "algebra").payload
    classes = [c.value for c in classify(alg)]  # type: ignore[arg-type]
    if ctx.format == "json":
        ctx.emit_json(classes)
    else:
        for name in classes:
            print(name)
    return EXIT_OK if classes else EXIT_NEGATIVE


def _cmd_decompose(ctx: _Context) -> int:
    doc = ctx.read(ctx.args.file, "algebra")
    ctx.emit(decompose(doc.payload), source=ctx.args.file)  # type: ignore[arg-type]
    return EXIT_OK


def _report_defects(outcome: GlueOutcome) -> None:
    for defect in outcome.defects:
        print(f"defect {defect.condition} witness={list(defect.witness)}", file=sys.stderr)


def _cmd_glue(ctx: _Context) -> int:
    if ctx.args.linear:
        monoids = [ctx.read(path, "algebra").payload for path in ctx.args.files]
        outcome = glue_linear(monoids)  # type: ignore[arg-type]
    else:
        if len(ctx.args.files) != 1:
            raise DocumentError("glue takes one system document (or --linear with algebras)")
        outcome = glue(ctx.read(ctx.args.files[0], "system").payload)  # type: ignore[arg-type]
    ctx.emit(outcome.algebra)
    _report_defects(outcome)
    return EXIT_OK if outcome.ok else EXIT_NEGATIVE


def _cmd_subreduct(ctx: _Context) -> int:
    alg = ctx.read(ctx.args.file, "algebra").payload
    results = subreduct_conditions(alg)  # type: ignore[arg-type]
    if ctx.format == "json":
        ctx.emit_json({k: {"ok": r.ok, "witness": list(r.witness)} for k, r in results.items()})
    else:
        for name, result in results.items():
            tail = "" if result.ok else f"  witness={list(result.witness)}"
            print(f"{name:16s} {'true' if result.ok else 'false'}{tail}")
    return EXIT_OK if results["bounds"].ok else EXIT_NEGATIVE


def _cmd_extend(ctx: _Context) -> int:
    alg = ctx.read(ctx.args.file, "algebra").payload
    bottom = ctx.read(ctx.args.bottom, "algebra").payload if ctx.args.bottom else None
    ctx.emit(extend_to_monoid(alg, bottom))  # type: ignore[arg-type]
    return EXIT_OK


def _parse_sizes(text: str) -> List[int]:
    for sep in ("..", "-"):
        if sep in text:
            low, high = text.split(sep, 1)
            return list(range(int(low), int(high) + 1))
    return [int(text)]


def _open_store() -> Optional[EnumerationStore]:
    try:
        return EnumerationStore()
    except (sqlite3.Error, OSError):
        logger.exception("result cache unavailable; enumerating without it")
        return None


def _cached(
    store: EnumerationStore, cls: AlgebraClass, n: int, retain: bool
) -> Optional[EnumerationResult]:
    try:
        count = store.cached_count(cls.value, n)
        reps = store.load_representatives(cls.value, n) if retain else None
    except (sqlite3.Error, IpoError):
        logger.exception("failed to read cached result for %s n=%d", cls.value, n)
        return None
    if count is None or (retain and reps is None):
        return None
    logger.info("cache hit %s n=%d", cls.value, n)
    return EnumerationResult(cls, n, count, reps, route="cache")


def _enumerate_one(
    ctx: _Context, cls: AlgebraClass, n: int, store: Optional[EnumerationStore]
) -> EnumerationResult:
    args = ctx.args
    if store is not None:
        hit = _cached(store, cls, n, args.retain)
        if hit is not None:
            return hit
    started = time.perf_counter()
    result = enumerate_algebras(cls, n, retain=args.retain, route=args.route, workers=args.workers)
    if store is not None:
        try:
            store.record(result, result.route, time.perf_counter() - started)
        except sqlite3.Error:
            logger.exception("failed to record enumeration result")
    return result


def _cmd_enumerate(ctx: _Context) -> int:
    args = ctx.args
    cls = AlgebraClass.parse(args.algebra_class)
    use_cache = bool(args.cache or load_config().get("store", {}).get("enabled", False))
    store = _open_store() if use_cache else None
    try:
        results = [_enumerate_one(ctx, cls, n, store) for n in _parse_sizes(args.size)]
    finally:
        if store is not None:
            store.close()
    if ctx.format == "json":
        rows: List[Dict[str, Any]] = []
        for r in results:
            row: Dict[str, Any] = {"class": cls.value, "size": r.size, "count": r.count}
            if r.representatives is not None:
                row["representatives"] = [alg.tables() for alg in r.representatives]
            rows.append(row)
        ctx.emit_json(rows)
        return EXIT_OK
    for r in results:
        print(r.row())
    print()
    print(f"{'n':>24s} | " + " ".join(f"{r.size:>5d}" for r in results))
    print(f"{cls.value:>24s} | " + " ".join(f"{r.count:>5d}" for r in results))
    for r in results:
        for index, alg in enumerate(r.representatives or []):
            print()
            print(f"# {cls.value} n={r.size} #{index}")
            sys.stdout.write(serialize(AlgebraDocument.wrap(alg)))
    return EXIT_OK


def _cmd_dualize(ctx: _Context) -> int:
    ctx.emit(dualize(ctx.read(ctx.args.file, "algebra").payload))  # type: ignore[arg-type]
    return EXIT_OK


def _cmd_primalize(ctx: _Context) -> int:
    ctx.emit(primalize(ctx.read(ctx.args.file, "dual").payload))  # type: ignore[arg-type]
    return EXIT_OK


def _cmd_export(ctx: _Context) -> int:
    doc = read_document(ctx.args.file, ctx.strict)
    text = export_diagram(doc, ctx.args.mode)
    if ctx.args.out:
        with open(ctx.args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_iso(ctx: _Context) -> int:
    one = read_document(ctx.args.first, ctx.strict)
    other = read_document(ctx.args.second, ctx.strict)
    if one.kind != other.kind or one.kind == "system":
        raise DocumentError("iso compares two algebra documents or two dual documents")
    if one.kind == "dual":
        same = is_isomorphic_dual(one.payload, other.payload)  # type: ignore[arg-type]
        print("isomorphic" if same else "not isomorphic")
        return EXIT_OK if same else EXIT_NEGATIVE
    mapping = find_isomorphism(one.payload, other.payload)  # type: ignore[arg-type]
    if mapping is None:
        print("not isomorphic")
        return EXIT_NEGATIVE
    if ctx.format == "json":
        ctx.emit_json({"isomorphic": True, "map": list(mapping)})
    else:
        print("isomorphic")
        print("map " + " ".join(f"{x}->{y}" for x, y in enumerate(mapping)))
    return EXIT_OK


# --- parser ---
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ipotool", description="finite ipo-semigroup toolkit")
    parser.add_argument("--strict", action="store_true", help="reject unknown document fields")
    parser.add_argument("--format", choices=("table", "json"), default=None)
    parser.add_argument("--config", metavar="PATH", help="config file for this run")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="dotted config override, e.g. enumeration.workers=4")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, handler, help_text in (
        ("check", _cmd_check, "print the class report"),
        ("classify", _cmd_classify, "list the classes the algebra belongs to"),
        ("decompose", _cmd_decompose, "decompose a locally integral algebra"),
        ("subreduct", _cmd_subreduct, "check 0_p <= 1_q and the equivalent conditions"),
        ("dualize", _cmd_dualize, "dual of an ipo-semilattice"),
        ("primalize", _cmd_primalize, "algebra of a dual system"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.set_defaults(handler=handler)

    p = sub.add_parser("glue", help="glue a directed system (or --linear algebras)")
    p.add_argument("--linear", action="store_true")
    p.add_argument("files", nargs="+")
    p.set_defaults(handler=_cmd_glue)

    p = sub.add_parser("extend", help="embed into a locally integral ipo-monoid")
    p.add_argument("file")
    p.add_argument("--bottom", default=None)
    p.set_defaults(handler=_cmd_extend)

    p = sub.add_parser("enumerate", help="count algebras up to isomorphism")
    p.add_argument("--class", dest="algebra_class", required=True,
                   choices=[c.value for c in AlgebraClass])
    p.add_argument("--size", required=True, help="N or A..B")
    p.add_argument("--retain", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--route", choices=ROUTES, default=None)
    p.add_argument("--cache", action="store_true")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("export", help="DOT diagram")
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_export)

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=_cmd_iso)
    return parser


def _parse_value(text: str) -> Any:
    try:
        return json.loads(text)
    except ValueError:
        return text


def _apply_overrides(args: argparse.Namespace) -> None:
    if args.config:
        os.environ["IPOTOOL_CONFIG"] = args.config
        load_config(force_reload=True)
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise DocumentError(f"--set expects KEY=VALUE, got {item!r}")
        set_config_value(key.strip(), _parse_value(value.strip()))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    try:
        _apply_overrides(args)
        configure_logging(args.log_level)
        return int(args.handler(_Context(args)))
    except (DocumentError, StructureError, BudgetExceeded, ExportError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except IpoError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NEGATIVE
    except Exception:
        logger.exception("unexpected failure")
        return EXIT_USAGE
