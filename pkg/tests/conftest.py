from __future__ import annotations

import json
from pathlib import Path
from typing import Callable

import pytest

from algebra.catalog import diamond_without_identity, noncyclic_commutative, two
from core.config import load_config
from decomposition.system import DirectedSystem
from duality.dual import UNDEFINED, DualSystem, dual_from_tables
from ui.documents import AlgebraDocument, serialize


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """テストごとに空の設定ファイル + 検証フラグを有効にした設定で走らせる。"""
    path = tmp_path / "ipotool.json"
    path.write_text(
        json.dumps({
            "debug": {"verify_decomposition": True},
            "enumeration": {"verify_glued": True},
            "store": {"path": str(tmp_path / "store.db")},
        }),
        encoding="utf-8",
    )
    monkeypatch.setenv("IPOTOOL_CONFIG", str(path))
    load_config(force_reload=True)
    yield path
    monkeypatch.delenv("IPOTOOL_CONFIG", raising=False)
    load_config(force_reload=True)


@pytest.fixture
def noncyclic():
    # ⊥=0, a=1, b=2, c=3, ⊤=4
    return noncyclic_commutative()


@pytest.fixture
def diamond():
    # ⊥=0, p=1, q=2, ⊤=3
    return diamond_without_identity()


@pytest.fixture
def collapsing_diamond() -> DirectedSystem:
    """菱形 0 < 1, 2 < 3 の各節点に 2 を置き、φ は全て相手の単位元へ潰す。"""
    join = (
        (0, 1, 2, 3),
        (1, 1, 3, 3),
        (2, 3, 2, 3),
        (3, 3, 3, 3),
    )
    phi = {(p, q): (1, 1) for p in range(4) for q in range(4) if p != q and join[p][q] == q}
    return DirectedSystem.from_algebras(join, [two()] * 4, phi)


@pytest.fixture
def dual_chain() -> DualSystem:
    """鎖 0 < 1 < 2、原子は 0, 1, 2 個。0 → 1 は空写像。"""
    join = ((0, 1, 2), (1, 1, 2), (2, 2, 2))
    pmap = {
        (0, 0): (),
        (1, 1): (0,),
        (2, 2): (0, 1),
        (0, 1): (UNDEFINED,),
        (1, 2): (0, UNDEFINED),
        (0, 2): (UNDEFINED, UNDEFINED),
    }
    return dual_from_tables(join, (0, 1, 2), pmap)


@pytest.fixture
def write_doc(tmp_path) -> Callable[..., str]:
    counter = {"n": 0}

    def write(payload, name: str = "", **metadata) -> str:
        counter["n"] += 1
        path = Path(tmp_path) / f"{name or 'doc'}{counter['n']}.json"
        path.write_text(serialize(AlgebraDocument.wrap(payload, **metadata)), encoding="utf-8")
        return str(path)

    return write
