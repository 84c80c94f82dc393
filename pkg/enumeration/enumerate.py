from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from algebra.catalog import boolean_algebra
from algebra.checks import check_ipo
from algebra.errors import BudgetExceeded
from algebra.structure import FiniteIpoAlgebra
from core.config import load_config
from enumeration.canonical import canonical_key
from enumeration.classes import AlgebraClass, belongs
from enumeration.composite import catalogue_for, glued_algebras, max_nodes, needed_minimal
from enumeration.posets import (
    bounded_posets,
    centralizer,
    join_semilattices,
    negation_classes,
    self_dual_posets,
    top_of,
)
from enumeration.search import SearchOptions, TableSearch

logger = logging.getLogger(__name__)

ROUTES = ("auto", "direct", "composite", "atoms")
# 直接探索しか持たない類
_DIRECT_ONLY = (AlgebraClass.IPO_SEMIGROUP, AlgebraClass.IPO_MONOID)

Unit = Tuple[Any, ...]
Found = List[Tuple[bytes, FiniteIpoAlgebra]]


@dataclass
class EnumerationResult:
    algebra_class: AlgebraClass
    size: int
    count: int
    representatives: Optional[List[FiniteIpoAlgebra]] = None
    keys: Tuple[bytes, ...] = field(default=(), repr=False)
    route: str = ""

    def row(self) -> str:
        """class,size,count の機械可読な一行。"""
        return f"{self.algebra_class.value},{self.size},{self.count}"


# --- work units ---
def _orbit_representatives(n: int, group: Sequence[Sequence[int]]) -> List[int]:
    seen = set()
    result = []
    for x in range(n):
        if x in seen:
            continue
        result.append(x)
        seen.update(g[x] for g in group)
        seen.add(x)
    return result


def _direct_units(algebra_class: AlgebraClass, n: int) -> List[Unit]:
    units: List[Unit] = []
    cls = algebra_class
    base = dict(
        commutative=cls.semilattice,
        idempotent=cls.semilattice,
        square_decreasing=cls.locally_integral and not cls.semilattice,
    )
    if cls in (AlgebraClass.INTEGRAL_IPO_MONOID, AlgebraClass.BOOLEAN_ALGEBRA):
        for leq in bounded_posets(n):
            top = top_of(leq)
            for tilde in negation_classes(leq):
                options = SearchOptions(unit=top, integral=True, **base)
                units.append(("direct", cls.value, leq, tilde, options, centralizer(leq, tilde)))
        return units
    for leq in self_dual_posets(n):
        for tilde in negation_classes(leq):
            group = centralizer(leq, tilde)
            if not cls.needs_identity:
                units.append(("direct", cls.value, leq, tilde, SearchOptions(**base), group))
                continue
            for e in _orbit_representatives(n, group):
                stabilizer = [g for g in group if g[e] == e]
                units.append(("direct", cls.value, leq, tilde, SearchOptions(unit=e, **base), stabilizer))
    return units


def _composite_units(algebra_class: AlgebraClass, n: int) -> List[Unit]:
    cls = algebra_class
    if cls in (AlgebraClass.INTEGRAL_IPO_MONOID, AlgebraClass.BOOLEAN_ALGEBRA):
        return [("composite", cls.value, ((0,),), n)]
    units: List[Unit] = []
    for k in range(1, max_nodes(n, cls.needs_identity) + 1):
        for table in join_semilattices(k, needed_minimal(k, n)):
            units.append(("composite", cls.value, table, n))
    return units


def _run_unit(unit: Unit) -> Found:
    kind, class_value = unit[0], unit[1]
    cls = AlgebraClass(class_value)
    if kind == "direct":
        _, _, leq, tilde, options, group = unit
        candidates = TableSearch(leq, tilde, options, group).algebras()
    else:
        _, _, table, n = unit
        catalogue = catalogue_for(commutative=cls.semilattice, boolean=cls.semilattice)
        candidates = [o.algebra for o in glued_algebras(table, n, catalogue, cls.needs_identity)]
    found: Found = []
    for alg in candidates:
        if belongs(check_ipo(alg), cls):
            found.append((canonical_key(alg), alg))
    return found


def _run_all(units: List[Unit], workers: int) -> List[Found]:
    if workers <= 1 or len(units) <= 1:
        return [_run_unit(u) for u in units]
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_unit, units, chunksize=1))
    except (OSError, PermissionError, NotImplementedError):
        logger.warning("worker pool unavailable; running %d units inline", len(units))
        return [_run_unit(u) for u in units]


# --- entry point ---
def resolve_route(algebra_class: AlgebraClass, route: str) -> str:
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; choose one of {', '.join(ROUTES)}")
    if route == "auto":
        if algebra_class == AlgebraClass.BOOLEAN_ALGEBRA:
            return "atoms"
        return "direct" if algebra_class in _DIRECT_ONLY else "composite"
    if route == "composite" and algebra_class in _DIRECT_ONLY:
        raise ValueError(f"{algebra_class.value} has no composite route; use direct or auto")
    if route == "atoms" and algebra_class != AlgebraClass.BOOLEAN_ALGEBRA:
        raise ValueError("the atoms route only counts Boolean algebras")
    return route


def check_budget(algebra_class: AlgebraClass, n: int, budget: Optional[int] = None) -> None:
    if budget is None:
        budgets = load_config().get("enumeration", {}).get("budgets", {})
        budget = int(budgets.get(algebra_class.value, 0))
    if n > budget:
        raise BudgetExceeded(algebra_class.value, n, budget)


def enumerate_algebras(
    algebra_class: AlgebraClass | str,
    n: int,
    retain: bool = False,
    route: Optional[str] = None,
    workers: Optional[int] = None,
    budget: Optional[int] = None,
) -> EnumerationResult:
    """algebra_class の n 元の代数を同型を除いて数える。

    予算を超える n は BudgetExceeded で断る（途中までの数は返さない）。
    """
    cls = AlgebraClass.parse(algebra_class) if isinstance(algebra_class, str) else algebra_class
    if n < 1:
        raise ValueError("n must be at least 1")
    check_budget(cls, n, budget)
    cfg = load_config().get("enumeration", {})
    chosen = resolve_route(cls, route or cfg.get("route", "auto"))
    workers = int(workers if workers is not None else cfg.get("workers", 1))

    started = time.perf_counter()
    merged: Dict[bytes, FiniteIpoAlgebra] = {}
    if chosen == "atoms":
        atoms = n.bit_length() - 1
        if 1 << atoms == n:
            alg = boolean_algebra(atoms)
            merged[canonical_key(alg)] = alg
    else:
        units = _direct_units(cls, n) if chosen == "direct" else _composite_units(cls, n)
        logger.info("enumerate %s n=%d: %d %s units, workers=%d", cls.value, n, len(units), chosen, workers)
        for found in _run_all(units, workers):
            for key, alg in found:
                merged.setdefault(key, alg)

    keys = tuple(sorted(merged))
    elapsed = time.perf_counter() - started
    logger.info("enumerate %s n=%d: %d classes in %.2fs", cls.value, n, len(keys), elapsed)
    return EnumerationResult(
        algebra_class=cls,
        size=n,
        count=len(keys),
        representatives=[merged[k] for k in keys] if retain else None,
        keys=keys,
        route=chosen,
    )
