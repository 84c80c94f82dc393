from __future__ import annotations

import json
import sqlite3
import sys
from pathlib import Path
from typing import List, Optional


def main(argv: Optional[List[str]] = None) -> None:
    base_dir = Path(__file__).resolve().parent.parent
    args = sys.argv[1:] if argv is None else argv
    db_path = Path(args[0]) if args else base_dir / "data" / "ipotool.db"
    if not db_path.exists():
        print(f"DB not found: {db_path}")
        return
    con = sqlite3.connect(str(db_path))
    try:
        cur = con.execute("SELECT name FROM sqlite_master WHERE type='table' ORDER BY name")
        tables = [r[0] for r in cur.fetchall()]
        print("=== tables ===")
        print(", ".join(tables) if tables else "(none)")
        for t in tables:
            try:
                c = con.execute(f"SELECT COUNT(*) FROM {t}").fetchone()[0]
                print(f"{t}: {c} rows")
            except sqlite3.Error as e:
                print(f"{t}: error: {e}")
        if "runs" in tables:
            print("\n=== runs (latest per class,size) ===")
            for r in con.execute(
                """
                SELECT class, size, count, route, elapsed FROM runs
                WHERE id IN (SELECT MAX(id) FROM runs GROUP BY class, size)
                ORDER BY class, size
                """
            ):
                print(f"{r[0]},{r[1]},{r[2]}  route={r[3]} {r[4]:.2f}s")
        if "representatives" in tables:
            print("\n=== representatives (first 3) ===")
            for r in con.execute(
                "SELECT class, size, document FROM representatives ORDER BY class, size, key LIMIT 3"
            ):
                payload = json.loads(r[2]).get("payload", {})
                print(f"{r[0]} n={r[1]}: mul={payload.get('mul')}")
    finally:
        con.close()


if __name__ == "__main__":
    main()
