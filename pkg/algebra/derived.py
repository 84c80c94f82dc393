from __future__ import annotations

from typing import FrozenSet, Iterable, List, Optional

import numpy as np

from algebra.structure import FiniteIpoAlgebra


# --- residuals and the dual product ---
def residual_left(alg: FiniteIpoAlgebra, z: int, y: int) -> int:
    """z/y = −(y·∼z)"""
    return int(alg.minus[alg.mul[y, alg.tilde[z]]])


def residual_right(alg: FiniteIpoAlgebra, x: int, z: int) -> int:
    """x\\z = ∼(−z·x)"""
    return int(alg.tilde[alg.mul[alg.minus[z], x]])


def plus(alg: FiniteIpoAlgebra, x: int, y: int) -> int:
    """x+y = ∼(−x·−y)"""
    return int(alg.tilde[alg.mul[alg.minus[x], alg.minus[y]]])


def left_units(alg: FiniteIpoAlgebra) -> np.ndarray:
    """x ↦ x/x をまとめて計算する。"""
    ar = np.arange(alg.n)
    return alg.minus[alg.mul[ar, alg.tilde]]


def right_units(alg: FiniteIpoAlgebra) -> np.ndarray:
    """x ↦ x\\x"""
    ar = np.arange(alg.n)
    return alg.tilde[alg.mul[alg.minus, ar]]


# --- local identities and zeros ---
def local_identity(alg: FiniteIpoAlgebra, x: int) -> Optional[int]:
    right = residual_right(alg, x, x)
    if right != residual_left(alg, x, x):
        return None
    return right


def local_zero(alg: FiniteIpoAlgebra, x: int) -> Optional[int]:
    left = int(alg.mul[alg.minus[x], x])
    if left != int(alg.mul[x, alg.tilde[x]]):
        return None
    return left


# --- distinguished subsets ---
def positives(alg: FiniteIpoAlgebra) -> FrozenSet[int]:
    # p が正 ⟺ 全ての x で x ≤ p·x
    ar = np.arange(alg.n)
    above = alg.leq[ar[None, :], alg.mul]
    return frozenset(int(p) for p in np.flatnonzero(above.all(axis=1)))


def right_positives(alg: FiniteIpoAlgebra) -> FrozenSet[int]:
    """x ≤ x·p で定義した場合。positives と一致するはず。"""
    ar = np.arange(alg.n)
    above = alg.leq[ar[:, None], alg.mul]
    return frozenset(int(p) for p in np.flatnonzero(above.all(axis=0)))


def negative_elements(alg: FiniteIpoAlgebra) -> FrozenSet[int]:
    return frozenset(int(alg.tilde[p]) for p in positives(alg))


def global_identity(alg: FiniteIpoAlgebra) -> Optional[int]:
    ar = np.arange(alg.n)
    rows = (alg.mul == ar[None, :]).all(axis=1)
    cols = (alg.mul == ar[:, None]).all(axis=0)
    found = np.flatnonzero(rows & cols)
    if found.size == 0:
        return None
    return int(found[0])


def subalgebra_generated(alg: FiniteIpoAlgebra, generators: Iterable[int]) -> FrozenSet[int]:
    closed = set(int(g) for g in generators)
    frontier: List[int] = sorted(closed)
    while frontier:
        fresh = set()
        for x in frontier:
            fresh.add(int(alg.tilde[x]))
            fresh.add(int(alg.minus[x]))
            for y in closed:
                fresh.add(int(alg.mul[x, y]))
                fresh.add(int(alg.mul[y, x]))
        fresh -= closed
        # 新しい要素同士の積は次の周回で拾う
        closed |= fresh
        frontier = sorted(fresh)
    return frozenset(closed)


# --- order helpers ---
def join_of(alg: FiniteIpoAlgebra, x: int, y: int) -> Optional[int]:
    upper = alg.leq[x] & alg.leq[y]
    return _least(alg.leq, upper)


def meet_of(alg: FiniteIpoAlgebra, x: int, y: int) -> Optional[int]:
    lower = alg.leq[:, x] & alg.leq[:, y]
    return _least(alg.leq.T, lower)


def _least(leq: np.ndarray, members: np.ndarray) -> Optional[int]:
    for s in np.flatnonzero(members):
        if np.all(leq[s][members]):
            return int(s)
    return None


def covers(leq: np.ndarray) -> List[tuple]:
    """Hasse 図の辺 (下, 上) を昇順で返す。"""
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    edges = []
    for a in range(n):
        for b in np.flatnonzero(strict[a]):
            between = strict[a] & strict[:, b]
            if not between.any():
                edges.append((a, int(b)))
    return edges
