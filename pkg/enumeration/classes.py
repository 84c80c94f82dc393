from __future__ import annotations

from enum import Enum
from typing import Callable, Dict, List

from algebra.checks import ClassReport, check_ipo
from algebra.structure import FiniteIpoAlgebra


class AlgebraClass(str, Enum):
    IPO_SEMIGROUP = "ipo_semigroup"
    IPO_MONOID = "ipo_monoid"
    LOC_INT_IPO_SEMIGROUP = "loc_int_ipo_semigroup"
    LOC_INT_IPO_MONOID = "loc_int_ipo_monoid"
    INTEGRAL_IPO_MONOID = "integral_ipo_monoid"
    IPO_SEMILATTICE = "ipo_semilattice"
    IL_SEMILATTICE = "il_semilattice"
    COMM_IDEM_IPO_MONOID = "comm_idem_ipo_monoid"
    COMM_IDEM_IL_MONOID = "comm_idem_il_monoid"
    BOOLEAN_ALGEBRA = "boolean_algebra"

    @classmethod
    def parse(cls, name: str) -> "AlgebraClass":
        try:
            return cls(name.strip().lower().replace("-", "_"))
        except ValueError:
            choices = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown class {name!r}; choose one of {choices}") from None

    @property
    def needs_identity(self) -> bool:
        return self in _MONOID_CLASSES

    @property
    def locally_integral(self) -> bool:
        return self not in (AlgebraClass.IPO_SEMIGROUP, AlgebraClass.IPO_MONOID)

    @property
    def semilattice(self) -> bool:
        """可換かつ冪等（成分がブール代数）"""
        return self in _SEMILATTICE_CLASSES

    @property
    def lattice(self) -> bool:
        return self in (AlgebraClass.IL_SEMILATTICE, AlgebraClass.COMM_IDEM_IL_MONOID)


_MONOID_CLASSES = frozenset({
    AlgebraClass.IPO_MONOID,
    AlgebraClass.LOC_INT_IPO_MONOID,
    AlgebraClass.INTEGRAL_IPO_MONOID,
    AlgebraClass.COMM_IDEM_IPO_MONOID,
    AlgebraClass.COMM_IDEM_IL_MONOID,
    AlgebraClass.BOOLEAN_ALGEBRA,
})

_SEMILATTICE_CLASSES = frozenset({
    AlgebraClass.IPO_SEMILATTICE,
    AlgebraClass.IL_SEMILATTICE,
    AlgebraClass.COMM_IDEM_IPO_MONOID,
    AlgebraClass.COMM_IDEM_IL_MONOID,
    AlgebraClass.BOOLEAN_ALGEBRA,
})


def _semilattice(r: ClassReport) -> bool:
    return r["ipo_semigroup"] and r["locally_integral"] and r["commutative"] and r["idempotent"]


_MEMBERSHIP: Dict[AlgebraClass, Callable[[ClassReport], bool]] = {
    AlgebraClass.IPO_SEMIGROUP: lambda r: r["ipo_semigroup"],
    AlgebraClass.IPO_MONOID: lambda r: r["ipo_semigroup"] and r["has_global_identity"],
    AlgebraClass.LOC_INT_IPO_SEMIGROUP: lambda r: r["ipo_semigroup"] and r["locally_integral"],
    AlgebraClass.LOC_INT_IPO_MONOID: lambda r: (
        r["ipo_semigroup"] and r["locally_integral"] and r["has_global_identity"]
    ),
    AlgebraClass.INTEGRAL_IPO_MONOID: lambda r: r["ipo_semigroup"] and r["integral"],
    AlgebraClass.IPO_SEMILATTICE: _semilattice,
    AlgebraClass.IL_SEMILATTICE: lambda r: _semilattice(r) and r["lattice_ordered"],
    AlgebraClass.COMM_IDEM_IPO_MONOID: lambda r: _semilattice(r) and r["has_global_identity"],
    AlgebraClass.COMM_IDEM_IL_MONOID: lambda r: (
        _semilattice(r) and r["has_global_identity"] and r["lattice_ordered"]
    ),
    AlgebraClass.BOOLEAN_ALGEBRA: lambda r: (
        r["ipo_semigroup"] and r["integral"] and r["idempotent"]
    ),
}


def belongs(report: ClassReport, algebra_class: AlgebraClass) -> bool:
    return _MEMBERSHIP[algebra_class](report)


def classify(alg: FiniteIpoAlgebra) -> List[AlgebraClass]:
    """alg が属する類を列挙順に返す。"""
    report = check_ipo(alg)
    return [c for c in AlgebraClass if _MEMBERSHIP[c](report)]
