from __future__ import annotations

from algebra.catalog import boolean_algebra, lukasiewicz_chain, two_element_group
from enumeration.classes import AlgebraClass, classify


def test_diamond_classes_have_no_monoids(diamond):
    classes = classify(diamond)
    assert AlgebraClass.IPO_SEMIGROUP in classes
    assert AlgebraClass.LOC_INT_IPO_SEMIGROUP in classes
    assert AlgebraClass.IPO_SEMILATTICE in classes
    assert AlgebraClass.IL_SEMILATTICE in classes
    assert not any(c.needs_identity for c in classes)


def test_noncyclic_is_only_an_ipo_semigroup(noncyclic):
    assert classify(noncyclic) == [AlgebraClass.IPO_SEMIGROUP]


def test_square_is_boolean():
    classes = classify(boolean_algebra(2))
    assert AlgebraClass.BOOLEAN_ALGEBRA in classes
    assert AlgebraClass.INTEGRAL_IPO_MONOID in classes
    assert AlgebraClass.COMM_IDEM_IL_MONOID in classes


def test_chain_is_integral_but_not_idempotent():
    classes = classify(lukasiewicz_chain(4))
    assert AlgebraClass.INTEGRAL_IPO_MONOID in classes
    assert AlgebraClass.IPO_SEMILATTICE not in classes
    assert AlgebraClass.BOOLEAN_ALGEBRA not in classes


def test_group_is_a_monoid_but_not_locally_integral():
    classes = classify(two_element_group())
    assert classes == [AlgebraClass.IPO_SEMIGROUP, AlgebraClass.IPO_MONOID]


def test_class_order_follows_enum():
    classes = classify(boolean_algebra(1))
    assert classes == sorted(classes, key=list(AlgebraClass).index)
