from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from algebra.errors import DocumentError, IpoError
from algebra.structure import FiniteIpoAlgebra
from core.config import load_config
from decomposition.system import DirectedSystem, IntegralComponent
from duality.dual import DualSystem, dual_from_tables

FORMAT_VERSION = 1
KINDS = ("algebra", "system", "dual")

Payload = Union[FiniteIpoAlgebra, DirectedSystem, DualSystem]

_TOP_FIELDS = {"format_version", "kind", "payload", "metadata"}
_PAYLOAD_FIELDS = {
    "algebra": {"n", "leq", "mul", "tilde", "minus", "unit"},
    "system": {"join", "components", "phi"},
    "dual": {"join", "atoms", "pmap"},
}
_COMPONENT_FIELDS = {"carrier", "algebra"}
_EDGE_FIELDS = {"from", "to", "map"}


@dataclass
class AlgebraDocument:
    kind: str
    payload: Payload
    metadata: Dict[str, Any] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @classmethod
    def wrap(cls, payload: Payload, **metadata: Any) -> "AlgebraDocument":
        if isinstance(payload, FiniteIpoAlgebra):
            kind = "algebra"
        elif isinstance(payload, DirectedSystem):
            kind = "system"
        else:
            kind = "dual"
        return cls(kind, payload, dict(metadata))

    def labels(self) -> Optional[List[str]]:
        raw = self.metadata.get("labels")
        if isinstance(raw, list) and all(isinstance(s, str) for s in raw):
            return list(raw)
        return None


# --- serialize ---
def _algebra_payload(alg: FiniteIpoAlgebra) -> Dict[str, Any]:
    return alg.tables()


def _edges(maps) -> List[Dict[str, Any]]:
    return [
        {"from": p, "to": q, "map": list(maps[(p, q)])}
        for p, q in sorted(maps)
    ]


def _payload_dict(doc: AlgebraDocument) -> Dict[str, Any]:
    payload = doc.payload
    if doc.kind == "algebra":
        return _algebra_payload(payload)  # type: ignore[arg-type]
    if doc.kind == "system":
        return {
            "join": [list(row) for row in payload.join],  # type: ignore[union-attr]
            "components": [
                {"carrier": list(c.carrier), "algebra": _algebra_payload(c.algebra)}
                for c in payload.components  # type: ignore[union-attr]
            ],
            "phi": _edges(payload.phi),  # type: ignore[union-attr]
        }
    return {
        "join": [list(row) for row in payload.join],  # type: ignore[union-attr]
        "atoms": list(payload.atoms),  # type: ignore[union-attr]
        "pmap": _edges(payload.pmap),  # type: ignore[union-attr]
    }


def serialize(doc: AlgebraDocument, indent: Optional[int] = None) -> str:
    """決定的な JSON 文字列。同じ文書からは常に同じバイト列になる。"""
    if indent is None:
        indent = int(load_config().get("io", {}).get("indent", 2))
    body = {
        "format_version": doc.format_version,
        "kind": doc.kind,
        "payload": _payload_dict(doc),
        "metadata": doc.metadata,
    }
    return json.dumps(body, ensure_ascii=False, indent=indent) + "\n"


# --- parse ---
def _require(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where} must be an object")
    if key not in obj:
        raise DocumentError(f"{where} is missing field {key!r}")
    return obj[key]


def _reject_unknown(obj: Dict[str, Any], allowed: set, where: str, strict: bool) -> None:
    if not strict:
        return
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise DocumentError(f"{where} has unknown fields: {', '.join(unknown)}")


def _parse_algebra(obj: Any, where: str, strict: bool) -> FiniteIpoAlgebra:
    leq = _require(obj, "leq", where)
    mul = _require(obj, "mul", where)
    tilde = _require(obj, "tilde", where)
    minus = _require(obj, "minus", where)
    _reject_unknown(obj, _PAYLOAD_FIELDS["algebra"], where, strict)
    if "n" in obj and obj["n"] != (len(tilde) if isinstance(tilde, list) else None):
        raise DocumentError(f"{where}: n = {obj['n']!r} does not match the tables")
    alg = FiniteIpoAlgebra.from_tables(leq, mul, tilde, minus, unit=obj.get("unit"))
    return alg


def _parse_edges(raw: Any, where: str, strict: bool) -> Dict[tuple, tuple]:
    if not isinstance(raw, list):
        raise DocumentError(f"{where} must be a list")
    maps = {}
    for i, edge in enumerate(raw):
        label = f"{where}[{i}]"
        p, q = int(_require(edge, "from", label)), int(_require(edge, "to", label))
        values = _require(edge, "map", label)
        _reject_unknown(edge, _EDGE_FIELDS, label, strict)
        if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
            raise DocumentError(f"{label}.map must be a list of integers")
        if (p, q) in maps:
            raise DocumentError(f"{label}: duplicate edge ({p}, {q})")
        maps[(p, q)] = tuple(values)
    return maps


def _parse_system(obj: Any, strict: bool) -> DirectedSystem:
    join = _require(obj, "join", "payload")
    raw_components = _require(obj, "components", "payload")
    _reject_unknown(obj, _PAYLOAD_FIELDS["system"], "payload", strict)
    if not isinstance(raw_components, list):
        raise DocumentError("payload.components must be a list")
    components = []
    for i, raw in enumerate(raw_components):
        where = f"payload.components[{i}]"
        carrier = _require(raw, "carrier", where)
        _reject_unknown(raw, _COMPONENT_FIELDS, where, strict)
        algebra = _parse_algebra(_require(raw, "algebra", where), f"{where}.algebra", strict)
        if not isinstance(carrier, list) or len(carrier) != algebra.n:
            raise DocumentError(f"{where}.carrier must list {algebra.n} parent indices")
        if algebra.unit is None:
            raise DocumentError(f"{where}.algebra must declare its unit")
        components.append(IntegralComponent(tuple(int(v) for v in carrier), algebra))
    phi = _parse_edges(_require(obj, "phi", "payload"), "payload.phi", strict)
    system = DirectedSystem(tuple(tuple(int(v) for v in row) for row in join), tuple(components), phi)
    system.validate()
    return system


def _parse_dual(obj: Any, strict: bool) -> DualSystem:
    join = _require(obj, "join", "payload")
    atoms = _require(obj, "atoms", "payload")
    _reject_unknown(obj, _PAYLOAD_FIELDS["dual"], "payload", strict)
    pmap = _parse_edges(_require(obj, "pmap", "payload"), "payload.pmap", strict)
    return dual_from_tables(join, atoms, pmap)


def parse(text: str, strict: Optional[bool] = None) -> AlgebraDocument:
    """JSON 文書を読む。形と添字範囲はここで検査し、公理は check に任せる。"""
    if strict is None:
        strict = bool(load_config().get("io", {}).get("strict", False))
    if not text.strip():
        raise DocumentError("empty document", 1, 1)
    try:
        body = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno) from e
    if not isinstance(body, dict):
        raise DocumentError("document must be a JSON object")
    _reject_unknown(body, _TOP_FIELDS, "document", strict)
    version = _require(body, "format_version", "document")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version!r}")
    kind = _require(body, "kind", "document")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    metadata = body.get("metadata", {})
    if not isinstance(metadata, dict):
        raise DocumentError("metadata must be an object")
    raw = _require(body, "payload", "document")
    try:
        if kind == "algebra":
            payload: Payload = _parse_algebra(raw, "payload", strict)
        elif kind == "system":
            payload = _parse_system(raw, strict)
        else:
            payload = _parse_dual(raw, strict)
    except DocumentError:
        raise
    except (IpoError, TypeError, ValueError) as e:
        # StructureError はセル名を含むのでそのまま載せる
        raise DocumentError(f"payload: {e}") from e
    return AlgebraDocument(kind, payload, metadata, version)


def read_document(path: str, strict: Optional[bool] = None) -> AlgebraDocument:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from e
    return parse(text, strict)
