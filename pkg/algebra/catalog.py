from __future__ import annotations

from typing import List

from algebra.structure import FiniteIpoAlgebra

# 図で使う記号。添字順に並べる
DIAMOND_LABELS = ("⊥", "p", "q", "⊤")


def trivial() -> FiniteIpoAlgebra:
    return FiniteIpoAlgebra.from_tables([[1]], [[0]], [0], [0], unit=0)


def boolean_algebra(atoms: int) -> FiniteIpoAlgebra:
    """原子 atoms 個の冪集合ブール代数。要素は原子のビットマスク。"""
    size = 1 << atoms
    full = size - 1
    leq = [[int(a & b == a) for b in range(size)] for a in range(size)]
    mul = [[a & b for b in range(size)] for a in range(size)]
    neg = [full ^ a for a in range(size)]
    return FiniteIpoAlgebra.from_tables(leq, mul, neg, list(neg), unit=full)


def two() -> FiniteIpoAlgebra:
    return boolean_algebra(1)


def lukasiewicz_chain(size: int) -> FiniteIpoAlgebra:
    """0 < 1 < … < size-1 の鎖で x·y = max(0, x+y-top)。"""
    top = size - 1
    leq = [[int(a <= b) for b in range(size)] for a in range(size)]
    mul = [[max(0, a + b - top) for b in range(size)] for a in range(size)]
    neg = [top - a for a in range(size)]
    return FiniteIpoAlgebra.from_tables(leq, mul, neg, list(neg), unit=top)


def noncyclic_commutative() -> FiniteIpoAlgebra:
    """⊥ < a, b, c < ⊤ で積は常に ⊥。∼ と − は a, b, c を逆向きに巡回する。"""
    leq = [[int(a == b or a == 0 or b == 4) for b in range(5)] for a in range(5)]
    mul = [[0] * 5 for _ in range(5)]
    tilde = [4, 2, 3, 1, 0]
    minus = [4, 3, 1, 2, 0]
    return FiniteIpoAlgebra.from_tables(leq, mul, tilde, minus)


def diamond_without_identity() -> FiniteIpoAlgebra:
    """⊥ < p, q < ⊤、⊥ は吸収元、p·q = p·⊤ = q·⊤ = ⊤。局所整だが大域単位元を持たない。"""
    leq = [
        [1, 1, 1, 1],
        [0, 1, 0, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 1],
    ]
    mul = [
        [0, 0, 0, 0],
        [0, 1, 3, 3],
        [0, 3, 2, 3],
        [0, 3, 3, 3],
    ]
    neg = [3, 1, 2, 0]
    return FiniteIpoAlgebra.from_tables(leq, mul, neg, list(neg))


def two_element_group() -> FiniteIpoAlgebra:
    leq = [[1, 0], [0, 1]]
    mul = [[0, 1], [1, 0]]
    return FiniteIpoAlgebra.from_tables(leq, mul, [0, 1], [0, 1], unit=0)


def catalog() -> List[tuple]:
    """(名前, 代数) の一覧。テストの生成器が使う。"""
    return [
        ("trivial", trivial()),
        ("2", two()),
        ("2^2", boolean_algebra(2)),
        ("L3", lukasiewicz_chain(3)),
        ("L4", lukasiewicz_chain(4)),
        ("L5", lukasiewicz_chain(5)),
        ("noncyclic", noncyclic_commutative()),
        ("diamond", diamond_without_identity()),
        ("Z2", two_element_group()),
    ]
