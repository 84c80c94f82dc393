from __future__ import annotations

import numpy as np
import pytest

from enumeration.posets import (
    anti_automorphisms,
    automorphisms,
    bounded_posets,
    centralizer,
    join_leq,
    join_semilattices,
    linear_extension,
    negation_classes,
    posets,
    self_dual_posets,
    top_of,
)


def _chain(n: int) -> np.ndarray:
    return np.array([[x <= y for y in range(n)] for x in range(n)], dtype=bool)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_poset_counts(n, count):
    assert len(posets(n)) == count


def test_self_dual_three_element_posets():
    assert len(self_dual_posets(3)) == 3


def test_bounded_posets_have_bottom_zero_and_top_last():
    for leq in bounded_posets(5):
        assert leq[0].all()
        assert leq[:, 4].all()
        assert top_of(leq) == 4


@pytest.mark.parametrize("k,count", [(1, 1), (2, 1), (3, 2), (4, 5), (5, 15)])
def test_join_semilattice_counts(k, count):
    assert len(join_semilattices(k)) == count


def test_min_minimal_filters_semilattices():
    for table in join_semilattices(4, min_minimal=2):
        leq = join_leq(table)
        minimal = [p for p in range(4) if not any(leq[q][p] and q != p for q in range(4))]
        assert len(minimal) >= 2
    assert len(join_semilattices(4, min_minimal=2)) < len(join_semilattices(4))


def test_linear_extension_puts_top_first():
    for table in join_semilattices(4):
        order = linear_extension(table)
        leq = join_leq(table)
        position = {p: i for i, p in enumerate(order)}
        for p in range(4):
            for q in range(4):
                if p != q and leq[p][q]:
                    assert position[q] < position[p]


def test_automorphism_groups():
    antichain = np.eye(3, dtype=bool)
    assert len(automorphisms(antichain)) == 6
    assert len(anti_automorphisms(_chain(3))) == 1
    assert anti_automorphisms(_chain(3)) == [(2, 1, 0)]


def test_negation_classes_up_to_conjugation():
    assert len(negation_classes(np.eye(2, dtype=bool))) == 2
    assert negation_classes(_chain(3)) == [(2, 1, 0)]


def test_centralizer_commutes_with_negation():
    antichain = np.eye(3, dtype=bool)
    tilde = (1, 0, 2)
    group = centralizer(antichain, tilde)
    assert len(group) == 2
    for g in group:
        assert all(g[tilde[x]] == tilde[g[x]] for x in range(3))
