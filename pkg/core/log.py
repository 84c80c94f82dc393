from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from core.config import load_config

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_MARK = "_ipotool"


def configure_logging(level: Optional[str] = None) -> None:
    """ルートロガーに標準エラーと（設定があれば）ローテーションファイルを付ける。"""
    cfg = load_config().get("logging", {})
    root = logging.getLogger()
    # 二度目の呼び出しでは自分で付けたハンドラだけ付け替える
    for handler in list(root.handlers):
        if getattr(handler, _MARK, False):
            root.removeHandler(handler)
            handler.close()
    name = (level or str(cfg.get("level", "WARNING"))).upper()
    root.setLevel(getattr(logging, name, logging.WARNING))

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    setattr(console, _MARK, True)
    root.addHandler(console)

    path = str(cfg.get("file", "") or "")
    if not path:
        return
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(
            path,
            maxBytes=int(cfg.get("max_bytes", 1_000_000)),
            backupCount=int(cfg.get("backup_count", 3)),
            encoding="utf-8",
        )
    except OSError:
        # ログファイルが作れなくても CLI は続ける
        logging.getLogger(__name__).exception("cannot open log file %s", path)
        return
    handler.setFormatter(logging.Formatter(_FORMAT))
    setattr(handler, _MARK, True)
    root.addHandler(handler)
