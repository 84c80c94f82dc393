from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from enumeration.canonical import canonical_form

logger = logging.getLogger(__name__)

Poset = np.ndarray
JoinTable = Tuple[Tuple[int, ...], ...]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


# --- posets ---
@lru_cache(maxsize=None)
def _posets(n: int) -> Tuple[Poset, ...]:
    if n == 1:
        return (_frozen(np.ones((1, 1), dtype=bool)),)
    seen: Dict[bytes, Poset] = {}
    for smaller in _posets(n - 1):
        m = n - 1
        for mask in range(1 << m):
            below = [x for x in range(m) if mask >> x & 1]
            # 下集合でなければ飛ばす
            if any(smaller[y, x] and not mask >> y & 1 for x in below for y in range(m)):
                continue
            leq = np.zeros((n, n), dtype=bool)
            leq[:m, :m] = smaller
            leq[m, m] = True
            for x in below:
                leq[x, m] = True
            key = canonical_form(n, [leq])
            seen.setdefault(key, leq)
    result = tuple(_frozen(seen[k]) for k in sorted(seen))
    logger.debug("posets(%d): %d", n, len(result))
    return result


def posets(n: int) -> List[Poset]:
    """n 元の半順序を同型を除いて列挙する（既存の半順序に極大元を足す）。"""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_posets(n))


def _order_maps(leq: Poset, reverse: bool) -> List[Tuple[int, ...]]:
    """全単射 f で x ≤ y ⟺ f(x) ≤ f(y)（reverse なら f(y) ≤ f(x)）を満たすもの。"""
    n = leq.shape[0]
    target = leq.T if reverse else leq
    up_count = leq.sum(axis=1)
    down_count = leq.sum(axis=0)
    # 上下の要素数で候補を絞る
    if reverse:
        candidates = [[y for y in range(n) if up_count[x] == down_count[y] and down_count[x] == up_count[y]] for x in range(n)]
    else:
        candidates = [[y for y in range(n) if up_count[x] == up_count[y] and down_count[x] == down_count[y]] for x in range(n)]
    found: List[Tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(x: int) -> None:
        if x == n:
            found.append(tuple(image))
            return
        for y in candidates[x]:
            if used[y]:
                continue
            if all(
                leq[x, w] == target[y, image[w]] and leq[w, x] == target[image[w], y]
                for w in range(x)
            ):
                image[x], used[y] = y, True
                extend(x + 1)
                used[y] = False
        image[x] = -1

    extend(0)
    return found


def automorphisms(leq: Poset) -> List[Tuple[int, ...]]:
    return _order_maps(np.asarray(leq, dtype=bool), reverse=False)


def anti_automorphisms(leq: Poset) -> List[Tuple[int, ...]]:
    return _order_maps(np.asarray(leq, dtype=bool), reverse=True)


def self_dual_posets(n: int) -> List[Poset]:
    return [p for p in _posets(n) if anti_automorphisms(p)]


@lru_cache(maxsize=None)
def _bounded_posets(n: int) -> Tuple[Poset, ...]:
    if n <= 2:
        return tuple(p for p in _posets(n) if p.all(axis=1).any() and p.all(axis=0).any())
    result = []
    for inner in _posets(n - 2):
        # 0 を最小元、n-1 を最大元にする
        leq = np.zeros((n, n), dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] = inner
        result.append(_frozen(leq))
    return tuple(result)


def bounded_posets(n: int) -> List[Poset]:
    """最小元と最大元を持つ自己双対半順序。"""
    return [p for p in _bounded_posets(n) if anti_automorphisms(p)]


def top_of(leq: Poset) -> Optional[int]:
    tops = np.flatnonzero(np.asarray(leq).all(axis=0))
    return int(tops[0]) if tops.size else None


def negation_classes(leq: Poset) -> List[Tuple[int, ...]]:
    """反自己同型を Aut(P) による共役で割った代表。各類で辞書順最小のもの。"""
    autos = automorphisms(leq)
    result = []
    for f in anti_automorphisms(leq):
        smallest = True
        for g in autos:
            inverse = [0] * len(g)
            for x, gx in enumerate(g):
                inverse[gx] = x
            conjugate = tuple(g[f[inverse[x]]] for x in range(len(f)))
            if conjugate < f:
                smallest = False
                break
        if smallest:
            result.append(f)
    return result


def centralizer(leq: Poset, tilde: Sequence[int]) -> List[Tuple[int, ...]]:
    """∼ と可換な順序自己同型。"""
    return [g for g in automorphisms(leq) if all(g[tilde[x]] == tilde[g[x]] for x in range(len(g)))]


# --- join-semilattices ---
def _join_key(table: JoinTable) -> bytes:
    return canonical_form(len(table), binaries=[np.asarray(table)])


def _minimal_count(table: JoinTable) -> int:
    k = len(table)
    return sum(
        1 for p in range(k) if not any(q != p and table[q][p] == p for q in range(k))
    )


@lru_cache(maxsize=None)
def _join_semilattices(k: int, min_minimal: int) -> Tuple[JoinTable, ...]:
    if k == 1:
        return (((0,),),) if min_minimal <= 1 else ()
    seen: Dict[bytes, JoinTable] = {}
    m = k - 1
    for smaller in _join_semilattices(m, max(0, min_minimal - 1)):
        leq = [[smaller[x][y] == y for y in range(m)] for x in range(m)]
        for mask in range(1, 1 << m):
            upper = [x for x in range(m) if mask >> x & 1]
            if any(leq[x][y] and not mask >> y & 1 for x in upper for y in range(m)):
                continue
            joins = []
            for y in range(m):
                bounds = [u for u in upper if leq[y][u]]
                least = [u for u in bounds if all(leq[u][v] for v in bounds)]
                if not least:
                    break
                joins.append(least[0])
            else:
                table = tuple(
                    tuple(smaller[x][y] for y in range(m)) + (joins[x],) for x in range(m)
                ) + (tuple(joins) + (m,),)
                if _minimal_count(table) >= min_minimal:
                    seen.setdefault(_join_key(table), table)
    return tuple(seen[key] for key in sorted(seen))


def join_semilattices(k: int, min_minimal: int = 0) -> List[JoinTable]:
    """k 元の結び半束を同型を除いて列挙する。min_minimal は極小元の数の下限。

    既存の半束に極小元を一つ足して作る。極小元を取り除いても半束のまま。
    """
    if k < 1:
        raise ValueError("k must be positive")
    return list(_join_semilattices(k, min_minimal))


def join_leq(table: JoinTable) -> List[List[bool]]:
    k = len(table)
    return [[table[p][q] == q for q in range(k)] for p in range(k)]


def linear_extension(table: JoinTable) -> List[int]:
    """上から下への順。各節点はそれより上の節点すべての後に来る。"""
    k = len(table)
    above = [sum(1 for q in range(k) if table[p][q] == q) for p in range(k)]
    return sorted(range(k), key=lambda p: (above[p], p))

