from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np
from graphviz import Digraph

from algebra.derived import covers
from algebra.errors import ExportError, PreconditionError
from core.config import load_config
from duality.dual import UNDEFINED, DualSystem, multiplicative_order
from ui.documents import AlgebraDocument

MODES = ("order", "mult_order", "dual")
EMPTY_LABEL = "∅"


def _graph(name: str) -> Digraph:
    cfg = load_config().get("export", {})
    graph = Digraph(name=name, strict=True)
    graph.attr(rankdir=str(cfg.get("rankdir", "BT")))
    graph.attr("node", shape=str(cfg.get("node_shape", "circle")))
    return graph


def _hasse(name: str, leq: np.ndarray, labels: Sequence[str]) -> str:
    graph = _graph(name)
    for x, label in enumerate(labels):
        graph.node(f"e{x}", label)
    for lower, upper in covers(np.asarray(leq, dtype=bool)):
        graph.edge(f"e{lower}", f"e{upper}")
    return graph.source


def _dual(dual: DualSystem) -> str:
    graph = _graph("dual")
    for p, count in enumerate(dual.atoms):
        with graph.subgraph(name=f"cluster_{p}") as cluster:
            cluster.attr(label=f"node {p}")
            if count == 0:
                cluster.node(f"n{p}", EMPTY_LABEL, shape="plaintext")
            for a in range(count):
                cluster.node(f"n{p}a{a}", str(a))
    # 半束の被覆ごとに部分写像の矢印。空写像は点線
    for p in range(dual.d_size):
        for q in range(dual.d_size):
            if p == q or not dual.leq(p, q):
                continue
            if any(
                r not in (p, q) and dual.leq(p, r) and dual.leq(r, q) for r in range(dual.d_size)
            ):
                continue
            f = dual.pmap[(p, q)]
            defined = [(b, a) for b, a in enumerate(f) if a != UNDEFINED]
            if not defined:
                graph.edge(_anchor(dual, q), _anchor(dual, p), style="dotted")
                continue
            for b, a in defined:
                graph.edge(f"n{q}a{b}", f"n{p}a{a}")
    return graph.source


def _anchor(dual: DualSystem, p: int) -> str:
    return f"n{p}" if dual.atoms[p] == 0 else f"n{p}a0"


def export_diagram(doc: AlgebraDocument, mode: str, labels: Optional[List[str]] = None) -> str:
    """DOT テキストを返す。order / mult_order は代数、dual は双対系の文書が必要。"""
    if mode not in MODES:
        raise ExportError(f"unknown mode {mode!r}; choose one of {', '.join(MODES)}")
    if mode == "dual":
        if doc.kind != "dual":
            raise ExportError(f"mode dual needs a dual document, got {doc.kind}")
        return _dual(doc.payload)  # type: ignore[arg-type]
    if doc.kind != "algebra":
        raise ExportError(f"mode {mode} needs an algebra document, got {doc.kind}")
    alg = doc.payload
    names = labels or doc.labels() or [str(x) for x in range(alg.n)]  # type: ignore[union-attr]
    if len(names) != alg.n:  # type: ignore[union-attr]
        raise ExportError(f"{len(names)} labels for {alg.n} elements")  # type: ignore[union-attr]
    if mode == "order":
        return _hasse("order", alg.leq, names)  # type: ignore[union-attr]
    try:
        order = multiplicative_order(alg)  # type: ignore[arg-type]
    except PreconditionError as e:
        raise ExportError(str(e)) from e
    return _hasse("mult_order", order, names)
