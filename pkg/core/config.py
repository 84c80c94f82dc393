from __future__ import annotations

import copy
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict

logger = logging.getLogger(__name__)

_CFG_CACHE: Dict[str, Any] | None = None
_BASE_DIR = Path(__file__).resolve().parent.parent


def _default_config() -> Dict[str, Any]:
    return {
        "enumeration": {
            # 1 ならインライン実行。2 以上でプロセスプールに分配
            "workers": 1,
            # auto | direct | composite
            "route": "auto",
            # クラスごとの最大サイズ。超えたら BudgetExceeded で拒否する
            "budgets": {
                "ipo_semigroup": 6,
                "ipo_monoid": 6,
                "loc_int_ipo_semigroup": 8,
                "loc_int_ipo_monoid": 9,
                "integral_ipo_monoid": 9,
                "ipo_semilattice": 10,
                "il_semilattice": 10,
                "comm_idem_ipo_monoid": 12,
                "comm_idem_il_monoid": 12,
                "boolean_algebra": 16,
            },
            # 合成ルートで貼り合わせ結果を公理チェックし直す（テスト用）
            "verify_glued": False,
        },
        "debug": {
            # decompose の補題レベルの保証を毎回検証する
            "verify_decomposition": False,
        },
        "store": {
            "enabled": False,
            "path": str(_BASE_DIR / "data" / "ipotool.db"),
        },
        "io": {
            "strict": False,
            # table | json
            "format": "table",
            "indent": 2,
        },
        "logging": {
            "level": "WARNING",
            # 空ならファイル出力なし（例: "logs/ipotool.log"）
            "file": "",
            "max_bytes": 1_000_000,
            "backup_count": 3,
        },
        "export": {
            "rankdir": "BT",
            "node_shape": "circle",
        },
    }


def _resolve_config_path() -> Path:
    # 環境変数があれば最優先
    env_path = os.environ.get("IPOTOOL_CONFIG")
    if env_path:
        return Path(env_path)
    return _BASE_DIR / "config" / "ipotool.json"


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    result = dict(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(result.get(k), dict):
            result[k] = _deep_merge(result[k], v)  # type: ignore[index]
        else:
            result[k] = v
    return result


def _set_by_path(root: Dict[str, Any], path: str, value: Any) -> None:
    cur: Any = root
    parts = [p for p in str(path).split(".") if p]
    if not parts:
        return
    for key in parts[:-1]:
        if key not in cur or not isinstance(cur.get(key), dict):
            cur[key] = {}
        cur = cur[key]  # type: ignore[index]
    cur[parts[-1]] = value  # type: ignore[index]


def _load_file(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    try:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError):
        # 壊れた設定ファイルで CLI 全体を止めない。既定値で続行し原因は残す
        logger.exception("Failed to read config file %s", path)
        return {}
    if not isinstance(data, dict):
        logger.warning("Config file %s is not a JSON object; ignored", path)
        return {}
    return data


def load_config(force_reload: bool = False) -> Dict[str, Any]:
    """既定値に設定ファイル（JSON）を重ねた設定を返す。結果はキャッシュする。"""
    global _CFG_CACHE
    if _CFG_CACHE is not None and not force_reload:
        return _CFG_CACHE
    cfg = _deep_merge(_default_config(), _load_file(_resolve_config_path()))
    _CFG_CACHE = cfg
    return cfg


def save_config(cfg: Dict[str, Any]) -> None:
    path = _resolve_config_path()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            json.dump(cfg, f, ensure_ascii=False, indent=2)
    except OSError as e:
        raise RuntimeError(f"設定の保存に失敗しました: {path}") from e
    global _CFG_CACHE
    _CFG_CACHE = copy.deepcopy(cfg)


def set_config_value(path: str, value: Any) -> None:
    """ドット区切りのパスで実行中の設定を上書きする（保存はしない）。"""
    _set_by_path(load_config(), path, value)
