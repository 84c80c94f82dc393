from __future__ import annotations

import logging
from typing import Dict, List, Tuple

from algebra.checks import check_integral, check_ipo
from algebra.derived import positives, right_units
from algebra.errors import NotLocallyIntegral
from algebra.structure import FiniteIpoAlgebra
from core.config import load_config
from decomposition.system import DirectedSystem, IntegralComponent

logger = logging.getLogger(__name__)


def require_locally_integral(alg: FiniteIpoAlgebra) -> None:
    report = check_ipo(alg)
    for flag in ("ipo_semigroup", "locally_integral"):
        if not report[flag]:
            raise NotLocallyIntegral(flag, report.witnesses[flag])


def decompose(alg: FiniteIpoAlgebra) -> DirectedSystem:
    """正元の半束・整成分 A_p・φ_pq(x) = q·x からなる有向系を返す。

    節点の順序は正元の親添字の昇順。成分の局所添字も親添字の昇順。
    """
    require_locally_integral(alg)
    nodes = sorted(positives(alg))
    node_of = {p: i for i, p in enumerate(nodes)}
    identities = right_units(alg)

    join = tuple(
        tuple(node_of[int(alg.mul[p, q])] for q in nodes) for p in nodes
    )
    components: List[IntegralComponent] = []
    for p in nodes:
        carrier = tuple(int(y) for y in range(alg.n) if identities[y] == p)
        components.append(IntegralComponent(carrier, alg.restrict(carrier, unit=p)))

    phi: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for i, p in enumerate(nodes):
        for j, q in enumerate(nodes):
            if join[i][j] != j:
                continue
            target = components[j]
            phi[(i, j)] = tuple(
                target.local_of(int(alg.mul[q, x])) for x in components[i].carrier
            )

    system = DirectedSystem(join, tuple(components), phi)
    if load_config().get("debug", {}).get("verify_decomposition", False):
        _verify(alg, system)
    logger.debug("decompose n=%d: %d nodes, sizes %s", alg.n, len(nodes), [c.size for c in components])
    return system


def _verify(alg: FiniteIpoAlgebra, system: DirectedSystem) -> None:
    # 定理として成り立つはずの性質。破れていれば実装の不具合
    if len(system.locations) != alg.n:
        raise RuntimeError("components do not partition the carrier")
    for node, component in enumerate(system.components):
        if not check_integral(component.algebra):
            raise RuntimeError(f"component {node} is not integral")
    system.validate()
    for p, q in system.pairs():
        if p == q:
            continue
        source, target = system.components[p], system.components[q]
        if system.phi[(p, q)][source.zero] == target.zero:
            raise RuntimeError(f"phi[{p},{q}] does not avoid zeros")
    for x in range(alg.n):
        for y in range(alg.n):
            px, _ = system.locations[x]
            py, _ = system.locations[y]
            if system.locations[int(alg.mul[x, y])][0] != system.join[px][py]:
                raise RuntimeError(f"product of {x} and {y} leaves A_pq")


def component_of(alg: FiniteIpoAlgebra, x: int) -> int:
    """x を含む成分の節点番号（1_x の位置）。"""
    require_locally_integral(alg)
    nodes = sorted(positives(alg))
    return nodes.index(int(right_units(alg)[x]))


def component_of_by_bounds(alg: FiniteIpoAlgebra, x: int) -> int:
    """x ∈ [0_p, 1_p] かつ p·x = x となる正元 p の節点番号。"""
    require_locally_integral(alg)
    for node, p in enumerate(sorted(positives(alg))):
        zero = int(alg.tilde[p])
        if alg.leq[zero, x] and alg.leq[x, p] and int(alg.mul[p, x]) == x:
            return node
    raise RuntimeError(f"element {x} lies in no component")
