from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from algebra.checks import check_locally_integral
from algebra.structure import FiniteIpoAlgebra
from core.config import load_config
from decomposition.system import DirectedSystem
from glueing.conditions import verify_bal, verify_lax, verify_mon, verify_za
from glueing.plonka import glue_tables

logger = logging.getLogger(__name__)

DEFECT_ORDER: Tuple[str, ...] = ("za", "bal", "mon", "lax", "transitivity", "antisymmetry")


@dataclass(frozen=True)
class Defect:
    condition: str
    witness: Tuple[int, ...]


@dataclass(frozen=True)
class GlueOutcome:
    """貼り合わせの結果。欠陥があっても algebra は常に作る。"""

    algebra: FiniteIpoAlgebra
    defects: List[Defect] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.defects

    def conditions(self) -> List[str]:
        return [d.condition for d in self.defects]


def _relation_defects(leq: np.ndarray) -> List[Defect]:
    n = leq.shape[0]
    defects: List[Defect] = []
    broken = leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]
    hits = np.argwhere(broken)
    if hits.shape[0]:
        defects.append(Defect("transitivity", tuple(int(v) for v in hits[0])))
    hits = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if hits.shape[0]:
        defects.append(Defect("antisymmetry", tuple(int(v) for v in hits[0])))
    return defects


def glue(system: DirectedSystem) -> GlueOutcome:
    """∫_Φ A_p を作り、破れた条件をすべて欠陥として記録する。

    系そのものが不正（φ_pp ≠ id、合成則の破れ）なら IncompatibleFamily。
    """
    system.validate()
    algebra = glue_tables(system)
    defects: List[Defect] = []
    for condition in (
        verify_za(system),
        verify_bal(system),
        verify_mon(system),
        verify_lax(system, algebra),
    ):
        if not condition:
            defects.append(Defect(condition.condition, condition.witness))
    defects.extend(_relation_defects(algebra.leq))

    if not defects and load_config().get("enumeration", {}).get("verify_glued", False):
        result = check_locally_integral(algebra)
        if not result:
            raise RuntimeError(
                f"defect-free glueing is not locally integral: {result.condition} at {result.witness}"
            )
    logger.debug(
        "glue: %d nodes, %d elements, defects=%s",
        system.d_size, algebra.n, [d.condition for d in defects],
    )
    return GlueOutcome(algebra, defects)
