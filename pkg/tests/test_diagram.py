from __future__ import annotations

import pytest

from algebra.catalog import DIAMOND_LABELS, lukasiewicz_chain
from algebra.errors import ExportError
from ui.diagram import EMPTY_LABEL, export_diagram
from ui.documents import AlgebraDocument


def _edges(source: str) -> int:
    return source.count(" -> ")


def test_order_of_diamond(diamond):
    source = export_diagram(AlgebraDocument.wrap(diamond), "order")
    assert source.startswith("strict digraph")
    assert _edges(source) == 4
    for x in range(4):
        assert f"e{x}" in source


def test_labels_from_metadata(diamond):
    source = export_diagram(AlgebraDocument.wrap(diamond, labels=list(DIAMOND_LABELS)), "order")
    assert "⊤" in source and "⊥" in source


def test_multiplicative_order(diamond):
    source = export_diagram(AlgebraDocument.wrap(diamond), "mult_order")
    # ⊥ ⊑ ⊤ ⊑ p, q
    assert _edges(source) == 3
    assert "e0 -> e3" in source


def test_multiplicative_order_needs_idempotent_product():
    with pytest.raises(ExportError):
        export_diagram(AlgebraDocument.wrap(lukasiewicz_chain(3)), "mult_order")


def test_dual_chain_clusters(dual_chain):
    source = export_diagram(AlgebraDocument.wrap(dual_chain), "dual")
    assert source.count("subgraph cluster_") == 3
    assert source.count("dotted") == 1
    assert EMPTY_LABEL in source


def test_kind_mismatch(diamond, dual_chain):
    with pytest.raises(ExportError):
        export_diagram(AlgebraDocument.wrap(diamond), "dual")
    with pytest.raises(ExportError):
        export_diagram(AlgebraDocument.wrap(dual_chain), "order")
    with pytest.raises(ExportError):
        export_diagram(AlgebraDocument.wrap(diamond), "hasse")


def test_label_count_checked(diamond):
    with pytest.raises(ExportError):
        export_diagram(AlgebraDocument.wrap(diamond), "order", labels=["a", "b"])
