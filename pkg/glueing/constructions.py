from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.catalog import two
from algebra.checks import CheckResult
from algebra.derived import global_identity, positives, right_units
from algebra.errors import SubreductConditionFails, TrivialComponentError
from algebra.structure import FiniteIpoAlgebra
from decomposition.decompose import decompose, require_locally_integral
from decomposition.system import DirectedSystem, IntegralComponent, PhiMap
from glueing.glue import GlueOutcome, glue

logger = logging.getLogger(__name__)

ComponentLike = Union[IntegralComponent, FiniteIpoAlgebra]


def _as_component(item: ComponentLike, offset: int) -> IntegralComponent:
    if isinstance(item, IntegralComponent):
        return item.moved(offset)
    return IntegralComponent.standalone(item, offset)


def glue_linear(monoids: Sequence[ComponentLike]) -> GlueOutcome:
    """鎖 0 < 1 < … の上で φ_pq(x) = 1_q として貼り合わせる。先頭が最下段。"""
    components: List[IntegralComponent] = []
    offset = 0
    for index, item in enumerate(monoids):
        component = _as_component(item, offset)
        if component.size < 2:
            raise TrivialComponentError(
                f"component {index} is trivial; linear glueing needs |A_p| >= 2"
            )
        components.append(component)
        offset += component.size
    if not components:
        raise ValueError("glue_linear needs at least one component")

    size = len(components)
    join = tuple(tuple(max(p, q) for q in range(size)) for p in range(size))
    phi: PhiMap = {}
    for p, source in enumerate(components):
        phi[(p, p)] = tuple(range(source.size))
        for q in range(p + 1, size):
            phi[(p, q)] = (components[q].unit,) * source.size
    return glue(DirectedSystem(join, tuple(components), phi))


# --- subreducts of monoids ---
def subreduct_check(alg: FiniteIpoAlgebra) -> CheckResult:
    """正元 p, q すべてで 0_p ≤ 1_q か。反例は (p, q)。"""
    require_locally_integral(alg)
    nodes = sorted(positives(alg))
    for p in nodes:
        for q in nodes:
            if not alg.leq[alg.tilde[p], q]:
                return CheckResult(False, (p, q), "0_p <= 1_q")
    return CheckResult(True)


def subreduct_conditions(alg: FiniteIpoAlgebra) -> Dict[str, CheckResult]:
    """同値な三条件: 全要素の零の積・正元の零の積・0_p ≤ 1_q。"""
    require_locally_integral(alg)
    zero = [int(alg.mul[alg.minus[x], x]) for x in range(alg.n)]

    def zeros_multiply(elements: Sequence[int], label: str) -> CheckResult:
        for x in elements:
            for y in elements:
                if int(alg.mul[zero[x], zero[y]]) != zero[int(alg.mul[x, y])]:
                    return CheckResult(False, (x, y), label)
        return CheckResult(True)

    nodes = sorted(positives(alg))
    return {
        "zeros": zeros_multiply(range(alg.n), "0_x 0_y = 0_xy"),
        "positive_zeros": zeros_multiply(nodes, "0_p 0_q = 0_pq"),
        "bounds": subreduct_check(alg),
    }


def extend_to_monoid(
    alg: FiniteIpoAlgebra, bottom: Optional[ComponentLike] = None
) -> FiniteIpoAlgebra:
    """大域単位元を持つ局所整 ipo モノイドに埋め込む。

    自明な成分があればその正元が単位元なので宣言して返す。なければ最下段に
    bottom（既定は 2）を足して φ_⊥p(a) = 1_p で貼り合わせる。元の要素の添字は
    変わらない。
    """
    verdict = subreduct_check(alg)
    if not verdict:
        raise SubreductConditionFails(verdict.witness)

    trivial_nodes = [p for p in sorted(positives(alg)) if int(alg.tilde[p]) == p]
    if trivial_nodes:
        unit = global_identity(alg)
        if unit is None:
            raise RuntimeError(f"trivial component at {trivial_nodes[0]} but no global identity")
        return alg.with_unit(unit)

    system = decompose(alg)
    bottom_component = _as_component(bottom if bottom is not None else two(), alg.n)
    d = system.d_size
    join = tuple(
        tuple(system.join[p][q] if p < d and q < d else (q if p == d else p) for q in range(d + 1))
        for p in range(d + 1)
    )
    phi: PhiMap = dict(system.phi)
    phi[(d, d)] = tuple(range(bottom_component.size))
    for p, component in enumerate(system.components):
        phi[(d, p)] = (component.unit,) * bottom_component.size

    outcome = glue(DirectedSystem(join, system.components + (bottom_component,), phi))
    if outcome.defects:
        raise RuntimeError(f"extension is defective: {outcome.conditions()}")
    logger.debug("extend_to_monoid: %d -> %d elements", alg.n, outcome.algebra.n)
    return outcome.algebra.with_unit(bottom_component.parent_of(bottom_component.unit))


def partition_product(alg: FiniteIpoAlgebra, a: int, b: int) -> int:
    """a ⊙ b = 1_b·a"""
    return int(alg.mul[right_units(alg)[b], a])


def embedding_map(alg: FiniteIpoAlgebra) -> Tuple[int, ...]:
    """extend_to_monoid の結果への包含写像（添字をそのまま送る）。"""
    return tuple(range(alg.n))
