from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from algebra.checks import CheckResult, check_morphism
from algebra.errors import MorphismError
from decomposition.system import DirectedSystem
from glueing.plonka import glue_tables

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MorphismComponents:
    """準同型 h から読み取った (τ, η)。naturality は (nat) の判定。"""

    tau: Tuple[int, ...]
    eta: Tuple[Tuple[int, ...], ...]
    naturality: CheckResult


def morphism_components(
    src: DirectedSystem, dst: DirectedSystem, h: Sequence[int]
) -> MorphismComponents:
    """貼り合わせ同士の射 h を半束準同型 τ と成分ごとの η_p に分ける。

    τ(p) は h(1_p) を含む成分の節点。h が射でなければ MorphismError。
    """
    glued_src, glued_dst = glue_tables(src), glue_tables(dst)
    result = check_morphism(glued_src, glued_dst, h)
    if not result:
        raise MorphismError(
            f"map is not a morphism: {result.condition} fails at {result.witness}"
        )

    tau: List[int] = []
    eta: List[Tuple[int, ...]] = []
    for component in src.components:
        target_node, _ = dst.locations[int(h[component.parent_of(component.unit)])]
        target = dst.components[target_node]
        tau.append(target_node)
        eta.append(tuple(target.local_of(int(h[parent])) for parent in component.carrier))

    naturality = check_naturality(src, dst, tau, eta)
    logger.debug("morphism_components tau=%s nat=%s", tau, naturality.ok)
    return MorphismComponents(tuple(tau), tuple(eta), naturality)


def check_naturality(
    src: DirectedSystem,
    dst: DirectedSystem,
    tau: Sequence[int],
    eta: Sequence[Sequence[int]],
) -> CheckResult:
    """τ が結び準同型で、p ≤ q ごとに η_q φ_pq = φ_τ(p)τ(q) η_p となるか。

    破れた四角形は (p, q, a の親添字) で返す。
    """
    if len(tau) != src.d_size or len(eta) != src.d_size:
        raise MorphismError("tau and eta need one entry per source node")
    for p in range(src.d_size):
        for q in range(src.d_size):
            if tau[src.join[p][q]] != dst.join[tau[p]][tau[q]]:
                return CheckResult(False, (p, q), "join")
    for p, q in src.pairs():
        phi_src = src.phi[(p, q)]
        phi_dst = dst.phi[(tau[p], tau[q])]
        for a in range(src.components[p].size):
            if eta[q][phi_src[a]] != phi_dst[eta[p][a]]:
                return CheckResult(False, (p, q, src.components[p].parent_of(a)), "nat")
    return CheckResult(True)


def induced_morphism(
    src: DirectedSystem,
    dst: DirectedSystem,
    tau: Sequence[int],
    eta: Sequence[Sequence[int]],
) -> Tuple[int, ...]:
    """(τ, η) から貼り合わせの間の写像 h を組み立てる（親添字の表）。"""
    h = [0] * src.total_size
    for p, component in enumerate(src.components):
        target = dst.components[tau[p]]
        for a, parent in enumerate(component.carrier):
            h[parent] = target.parent_of(int(eta[p][a]))
    return tuple(h)
