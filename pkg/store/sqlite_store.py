from __future__ import annotations

import sqlite3
import threading
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.config import load_config
from algebra.structure import FiniteIpoAlgebra
from enumeration.enumerate import EnumerationResult
from ui.documents import AlgebraDocument, parse, serialize


class EnumerationStore:
    """列挙結果（件数と代表元）の SQLite キャッシュ。"""

    def __init__(self, path: Optional[str] = None) -> None:
        cfg = load_config()
        base = Path(__file__).resolve().parent.parent
        path_str = path or cfg.get("store", {}).get("path", str(base / "data" / "ipotool.db"))
        self.path = Path(path_str)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._conn = sqlite3.connect(str(self.path), check_same_thread=False)
        self._conn.execute("PRAGMA journal_mode=WAL;")
        self._conn.execute("PRAGMA synchronous=NORMAL;")
        self._lock = threading.Lock()
        self._ensure_schema()

    def _ensure_schema(self) -> None:
        with self._conn:
            self._conn.execute(
                """
                CREATE TABLE IF NOT EXISTS runs (
                  id INTEGER PRIMARY KEY AUTOINCREMENT,
                  ts INTEGER NOT NULL DEFAULT(strftime('%s','now')),
                  class TEXT NOT NULL,
                  size INTEGER NOT NULL,
                  route TEXT NOT NULL,
                  count INTEGER NOT NULL,
                  elapsed REAL NOT NULL
                )
                """
            )
            self._conn.execute(
                """
                CREATE TABLE IF NOT EXISTS representatives (
                  class TEXT NOT NULL,
                  size INTEGER NOT NULL,
                  key BLOB NOT NULL,
                  document TEXT NOT NULL,
                  PRIMARY KEY (class, size, key)
                )
                """
            )

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def record(self, result: EnumerationResult, route: str, elapsed: float) -> None:
        cls = result.algebra_class.value
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO runs(class, size, route, count, elapsed) VALUES (?, ?, ?, ?, ?)",
                (cls, result.size, route, result.count, float(elapsed)),
            )
            if result.representatives is not None:
                self._conn.execute(
                    "DELETE FROM representatives WHERE class = ? AND size = ?", (cls, result.size)
                )
                for key, alg in zip(result.keys, result.representatives):
                    self._conn.execute(
                        "INSERT INTO representatives(class, size, key, document) VALUES (?, ?, ?, ?)",
                        (cls, result.size, key, serialize(AlgebraDocument("algebra", alg))),
                    )

    def cached_count(self, cls: str, n: int) -> Optional[int]:
        with self._lock:
            row = self._conn.execute(
                "SELECT count FROM runs WHERE class = ? AND size = ? ORDER BY id DESC LIMIT 1",
                (cls, n),
            ).fetchone()
        return None if row is None else int(row[0])

    def load_representatives(self, cls: str, n: int) -> Optional[List[FiniteIpoAlgebra]]:
        """保存済みの代表元を鍵の昇順で返す。件数と合わなければ None。"""
        count = self.cached_count(cls, n)
        if count is None:
            return None
        with self._lock:
            rows = self._conn.execute(
                "SELECT document FROM representatives WHERE class = ? AND size = ? ORDER BY key",
                (cls, n),
            ).fetchall()
        if len(rows) != count:
            return None
        return [parse(r[0], strict=True).payload for r in rows]  # type: ignore[misc]

    def snapshot(self) -> Dict[str, Any]:
        with self._lock:
            runs = self._conn.execute("SELECT COUNT(*) FROM runs").fetchone()[0]
            reps = self._conn.execute("SELECT COUNT(*) FROM representatives").fetchone()[0]
            latest = self._conn.execute(
                "SELECT ts, class, size, route, count, elapsed FROM runs ORDER BY id DESC LIMIT 5"
            ).fetchall()
        return {
            "runs": int(runs),
            "representatives": int(reps),
            "latest": [
                {"ts": r[0], "class": r[1], "size": r[2], "route": r[3], "count": r[4], "elapsed": r[5]}
                for r in latest
            ],
            "taken_at": time.time(),
        }
