from __future__ import annotations

import pytest

from algebra.catalog import lukasiewicz_chain, two
from algebra.checks import check_ipo
from algebra.errors import BudgetExceeded
from enumeration.classes import AlgebraClass, belongs
from enumeration.composite import (
    FamilySearch,
    admissible_homs,
    integral_components,
    needed_minimal,
    size_assignments,
)
from enumeration.enumerate import enumerate_algebras, resolve_route
from enumeration.posets import bounded_posets, centralizer, join_semilattices, negation_classes, top_of
from enumeration.search import SearchOptions, TableSearch

# 公表されている同型類の数
IPO_SEMIGROUP = [1, 4, 10, 48, 160]
IPO_MONOID = [1, 3, 5, 20, 39, 179]
LOC_INT_SEMIGROUP = [1, 1, 2, 6, 12, 39, 90]
LOC_INT_MONOID = [1, 1, 2, 5, 9, 28, 57]
INTEGRAL_MONOID = [1, 1, 1, 3, 3, 13, 17, 84]
IPO_SEMILATTICE = [1, 1, 1, 3, 4, 10, 17, 43]
COMM_IDEM_MONOID = [1, 1, 1, 2, 2, 4, 4, 9, 10, 22]


def _count(cls: AlgebraClass, n: int, **kwargs) -> int:
    return enumerate_algebras(cls, n, **kwargs).count


def _cases(cls, table, fast_upto):
    return [
        pytest.param(cls, n, count, marks=() if n <= fast_upto else pytest.mark.slow)
        for n, count in enumerate(table, start=1)
    ]


@pytest.mark.parametrize(
    "cls,n,count",
    _cases(AlgebraClass.IPO_SEMIGROUP, IPO_SEMIGROUP, 3)
    + _cases(AlgebraClass.IPO_MONOID, IPO_MONOID, 3)
    + _cases(AlgebraClass.LOC_INT_IPO_SEMIGROUP, LOC_INT_SEMIGROUP, 5)
    + _cases(AlgebraClass.LOC_INT_IPO_MONOID, LOC_INT_MONOID, 5)
    + _cases(AlgebraClass.INTEGRAL_IPO_MONOID, INTEGRAL_MONOID, 6)
    + _cases(AlgebraClass.IPO_SEMILATTICE, IPO_SEMILATTICE, 6)
    + _cases(AlgebraClass.COMM_IDEM_IPO_MONOID, COMM_IDEM_MONOID, 7),
)
def test_published_counts(cls, n, count):
    assert _count(cls, n) == count


@pytest.mark.slow
def test_lattice_ordered_semilattices_at_eight():
    assert _count(AlgebraClass.IL_SEMILATTICE, 8) == 42


@pytest.mark.slow
def test_unique_non_lattice_semilattice_at_eight():
    result = enumerate_algebras(AlgebraClass.IPO_SEMILATTICE, 8, retain=True)
    outliers = [alg for alg in result.representatives if not check_ipo(alg)["lattice_ordered"]]
    assert len(outliers) == 1


@pytest.mark.parametrize("n", range(1, 17))
def test_boolean_algebras(n):
    assert _count(AlgebraClass.BOOLEAN_ALGEBRA, n) == (1 if n in (1, 2, 4, 8, 16) else 0)


@pytest.mark.parametrize(
    "n", [pytest.param(n, marks=() if n <= 4 else pytest.mark.slow) for n in range(1, 9)]
)
def test_boolean_algebras_by_search(n):
    searched = enumerate_algebras(AlgebraClass.BOOLEAN_ALGEBRA, n, route="direct")
    atoms = enumerate_algebras(AlgebraClass.BOOLEAN_ALGEBRA, n, route="atoms")
    assert searched.count == (1 if n in (1, 2, 4, 8) else 0)
    assert searched.keys == atoms.keys


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_routes_agree_on_locally_integral_semigroups(n):
    direct = enumerate_algebras(AlgebraClass.LOC_INT_IPO_SEMIGROUP, n, route="direct")
    composite = enumerate_algebras(AlgebraClass.LOC_INT_IPO_SEMIGROUP, n, route="composite")
    assert direct.keys == composite.keys


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_routes_agree_on_semilattices(n):
    direct = enumerate_algebras(AlgebraClass.IPO_SEMILATTICE, n, route="direct")
    composite = enumerate_algebras(AlgebraClass.IPO_SEMILATTICE, n, route="composite")
    assert direct.keys == composite.keys


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_routes_agree_on_locally_integral_monoids(n):
    direct = enumerate_algebras(AlgebraClass.LOC_INT_IPO_MONOID, n, route="direct")
    composite = enumerate_algebras(AlgebraClass.LOC_INT_IPO_MONOID, n, route="composite")
    assert direct.keys == composite.keys


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_routes_agree_on_larger_locally_integral_semigroups(n):
    direct = enumerate_algebras(AlgebraClass.LOC_INT_IPO_SEMIGROUP, n, route="direct")
    composite = enumerate_algebras(AlgebraClass.LOC_INT_IPO_SEMIGROUP, n, route="composite")
    assert direct.keys == composite.keys


def test_worker_count_does_not_change_result():
    runs = {
        workers: enumerate_algebras(AlgebraClass.IPO_SEMIGROUP, 3, workers=workers)
        for workers in (1, 4, 8)
    }
    assert runs[1].keys == runs[4].keys == runs[8].keys
    assert {r.row() for r in runs.values()} == {"ipo_semigroup,3,10"}


def test_worker_count_does_not_change_composite_result():
    runs = [
        enumerate_algebras(AlgebraClass.LOC_INT_IPO_SEMIGROUP, 5, workers=workers, retain=True)
        for workers in (1, 4, 8)
    ]
    assert runs[0].keys == runs[1].keys == runs[2].keys
    assert runs[0].count == 12
    assert [a.tables() for a in runs[0].representatives] == [
        a.tables() for a in runs[2].representatives
    ]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_class_inclusion_bounds_counts(n):
    monoids = _count(AlgebraClass.LOC_INT_IPO_MONOID, n)
    semigroups = _count(AlgebraClass.LOC_INT_IPO_SEMIGROUP, n)
    assert monoids <= semigroups <= _count(AlgebraClass.IPO_SEMIGROUP, n)


def test_retained_representatives_belong_to_class():
    result = enumerate_algebras(AlgebraClass.LOC_INT_IPO_MONOID, 4, retain=True)
    assert result.count == len(result.representatives) == 5
    for alg in result.representatives:
        assert belongs(check_ipo(alg), AlgebraClass.LOC_INT_IPO_MONOID)


def test_budget_refuses_large_sizes():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_algebras(AlgebraClass.IPO_SEMIGROUP, 7)
    assert info.value.budget == 6
    with pytest.raises(BudgetExceeded):
        enumerate_algebras(AlgebraClass.LOC_INT_IPO_SEMIGROUP, 3, budget=2)


def test_direct_only_classes_have_no_composite_route():
    with pytest.raises(ValueError):
        resolve_route(AlgebraClass.IPO_MONOID, "composite")
    with pytest.raises(ValueError):
        resolve_route(AlgebraClass.IPO_SEMILATTICE, "atoms")
    assert resolve_route(AlgebraClass.BOOLEAN_ALGEBRA, "auto") == "atoms"
    assert resolve_route(AlgebraClass.BOOLEAN_ALGEBRA, "direct") == "direct"
    assert resolve_route(AlgebraClass.IPO_SEMILATTICE, "auto") == "composite"
    with pytest.raises(ValueError):
        resolve_route(AlgebraClass.IPO_SEMIGROUP, "sideways")


def test_class_names_accept_dashes():
    assert AlgebraClass.parse("Loc-Int-IPO-Monoid") is AlgebraClass.LOC_INT_IPO_MONOID
    with pytest.raises(ValueError):
        AlgebraClass.parse("group")


class TestBuildingBlocks:
    def test_integral_component_counts(self):
        assert [len(integral_components(n)) for n in range(1, 6)] == INTEGRAL_MONOID[:5]

    def test_boolean_catalogue(self):
        assert len(integral_components(4, boolean=True)) == 1
        assert integral_components(3, boolean=True) == []

    def test_table_search_finds_three_chain(self):
        leq = bounded_posets(3)[0]
        top = top_of(leq)
        tilde = negation_classes(leq)[0]
        found = TableSearch(leq, tilde, SearchOptions(unit=top, integral=True), centralizer(leq, tilde)).algebras()
        assert len(found) == 1
        assert check_ipo(found[0])["integral"]

    def test_admissible_homs_avoid_zero(self):
        homs = admissible_homs(two(), lukasiewicz_chain(3), avoid_zero=True)
        assert homs == [(2, 2)]
        assert (0, 2) in admissible_homs(two(), lukasiewicz_chain(3), avoid_zero=False)

    def test_size_one_only_at_minimal_nodes(self):
        chain = join_semilattices(2)[0]
        sizes = list(size_assignments(chain, 4, lambda s: True))
        for assignment in sizes:
            assert assignment.count(1) <= 1
        assert len(sizes) == 2

    def test_family_search_on_a_chain(self):
        chain = join_semilattices(2)[0]
        # 節点 1 が下。two を下に、3 元の鎖を上に置く
        families = list(FamilySearch(chain, [lukasiewicz_chain(3), two()]).families())
        assert families == [{(0, 0): (0, 1, 2), (1, 1): (0, 1), (1, 0): (2, 2)}]

    def test_family_search_with_larger_lower_component(self):
        chain = join_semilattices(2)[0]
        # 下の成分の方が大きい。φ は上の単位元への定値写像だけ
        families = list(FamilySearch(chain, [two(), lukasiewicz_chain(3)]).families())
        assert families == [{(0, 0): (0, 1), (1, 1): (0, 1, 2), (1, 0): (1, 1, 1)}]

    def test_needed_minimal(self):
        assert needed_minimal(3, 4) == 2
        assert needed_minimal(2, 6) == 0
