from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from algebra.structure import FiniteIpoAlgebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchOptions:
    """積の表に課す追加条件。unit は固定する単位元の添字。"""

    unit: Optional[int] = None
    integral: bool = False
    commutative: bool = False
    idempotent: bool = False
    square_decreasing: bool = False


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0
    rejected: int = 0


def _single(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def _value(mask: int) -> int:
    return mask.bit_length() - 1


class TableSearch:
    """固定した (≤, ∼) の上で積の表をバックトラックで探す。

    各セルの候補はビットマスク。値が一つに決まったセルから単調性・回転・
    結合律（四つのセルのうち三つが決まれば残りを絞る）を伝播する。
    同じ (≤, ∼) の上の同型は symmetries による辞書順最小の表だけを残して除く。
    """

    def __init__(
        self,
        leq: np.ndarray,
        tilde: Sequence[int],
        options: SearchOptions = SearchOptions(),
        symmetries: Sequence[Sequence[int]] = (),
    ) -> None:
        self.n = n = int(leq.shape[0])
        self.leq = np.asarray(leq, dtype=bool).tolist()
        self.tilde = [int(t) for t in tilde]
        self.minus = [0] * n
        for x, t in enumerate(self.tilde):
            self.minus[t] = x
        self.full = (1 << n) - 1
        self.down = [sum(1 << y for y in range(n) if self.leq[y][x]) for x in range(n)]
        self.up = [sum(1 << y for y in range(n) if self.leq[x][y]) for x in range(n)]
        self.options = options
        self.symmetries = [tuple(g) for g in symmetries if tuple(g) != tuple(range(n))]
        self.stats = SearchStats()

    # --- domains ---
    def _initial(self) -> Optional[List[int]]:
        n, opts = self.n, self.options
        dom = [self.full] * (n * n)
        if opts.unit is not None:
            e = opts.unit
            for x in range(n):
                dom[e * n + x] &= 1 << x
                dom[x * n + e] &= 1 << x
        for x in range(n):
            for y in range(n):
                if opts.integral:
                    dom[x * n + y] &= self.down[x] & self.down[y]
            if opts.idempotent:
                dom[x * n + x] &= 1 << x
            if opts.square_decreasing:
                dom[x * n + x] &= self.down[x]
        if any(d == 0 for d in dom):
            return None
        queue = [c for c in range(n * n) if _single(dom[c])]
        return dom if self._propagate(dom, queue) else None

    def _restrict(self, dom: List[int], cell: int, mask: int, queue: List[int]) -> bool:
        old = dom[cell]
        new = old & mask
        if new == old:
            return True
        if new == 0:
            return False
        dom[cell] = new
        if _single(new):
            queue.append(cell)
        return True

    def _propagate(self, dom: List[int], queue: List[int]) -> bool:
        n = self.n
        leq, down, up = self.leq, self.down, self.up
        tilde, minus, full = self.tilde, self.minus, self.full
        while queue:
            cell = queue.pop()
            x, y = divmod(cell, n)
            v = _value(dom[cell])

            # 単調性
            for w in range(n):
                if w == x:
                    continue
                if leq[x][w] and not self._restrict(dom, w * n + y, up[v], queue):
                    return False
                if leq[w][x] and not self._restrict(dom, w * n + y, down[v], queue):
                    return False
            for w in range(n):
                if w == y:
                    continue
                if leq[y][w] and not self._restrict(dom, x * n + w, up[v], queue):
                    return False
                if leq[w][y] and not self._restrict(dom, x * n + w, down[v], queue):
                    return False

            # 回転: xy ≤ z ⟺ y·∼z ≤ ∼x ⟺ −z·x ≤ −y
            below_tx = down[tilde[x]]
            below_my = down[minus[y]]
            for z in range(n):
                if leq[v][z]:
                    first, second = below_tx, below_my
                else:
                    first, second = full & ~below_tx, full & ~below_my
                if not self._restrict(dom, y * n + tilde[z], first, queue):
                    return False
                if not self._restrict(dom, minus[z] * n + x, second, queue):
                    return False

            if self.options.commutative and not self._restrict(dom, y * n + x, 1 << v, queue):
                return False

            if not self._associativity(dom, x, y, v, queue):
                return False
        return True

    def _equal(self, dom: List[int], q: int, s: int, queue: List[int]) -> bool:
        both = dom[q] & dom[s]
        return self._restrict(dom, q, both, queue) and self._restrict(dom, s, both, queue)

    def _associativity(self, dom: List[int], x: int, y: int, v: int, queue: List[int]) -> bool:
        # 三つ組 (a, b, c) で P = ab, R = bc, Q = P·c, S = a·R, 条件は Q = S
        n = self.n
        for c in range(n):
            # (x, y) が P
            r = dom[y * n + c]
            if _single(r) and not self._equal(dom, v * n + c, x * n + _value(r), queue):
                return False
            # (x, y) が R（b = x, c = y）
            p = dom[c * n + x]
            if _single(p) and not self._equal(dom, _value(p) * n + y, c * n + v, queue):
                return False
        target_q, target_s = 1 << x, 1 << y
        for a in range(n):
            for b in range(n):
                d = dom[a * n + b]
                if d == target_q:
                    # (x, y) が Q: P = (a, b) = x, c = y
                    r = dom[b * n + y]
                    if _single(r) and not self._equal(dom, x * n + y, a * n + _value(r), queue):
                        return False
                if d == target_s:
                    # (x, y) が S: R = (a, b) = y, 左の因子は x
                    p = dom[x * n + a]
                    if _single(p) and not self._equal(dom, _value(p) * n + b, x * n + y, queue):
                        return False
        return True

    # --- search ---
    def _is_smallest(self, table: Tuple[int, ...]) -> bool:
        n = self.n
        for g in self.symmetries:
            image = [0] * (n * n)
            for x in range(n):
                gx = g[x] * n
                row = x * n
                for y in range(n):
                    image[gx + g[y]] = g[table[row + y]]
            if tuple(image) < table:
                return False
        return True

    def _descend(self, dom: List[int]) -> Iterator[Tuple[int, ...]]:
        self.stats.nodes += 1
        best, best_size = -1, self.n + 1
        for cell, d in enumerate(dom):
            if not _single(d):
                size = bin(d).count("1")
                if size < best_size:
                    best, best_size = cell, size
        if best < 0:
            table = tuple(_value(d) for d in dom)
            if self._is_smallest(table):
                self.stats.solutions += 1
                yield table
            else:
                self.stats.rejected += 1
            return
        d = dom[best]
        while d:
            bit = d & -d
            d ^= bit
            child = list(dom)
            child[best] = bit
            if self._propagate(child, [best]):
                yield from self._descend(child)

    def tables(self) -> Iterator[Tuple[int, ...]]:
        dom = self._initial()
        if dom is None:
            return
        yield from self._descend(dom)

    def algebras(self) -> List[FiniteIpoAlgebra]:
        n = self.n
        leq = np.asarray(self.leq, dtype=bool)
        result = []
        for table in self.tables():
            mul = [list(table[x * n:(x + 1) * n]) for x in range(n)]
            result.append(
                FiniteIpoAlgebra.from_tables(leq, mul, self.tilde, self.minus, unit=self.options.unit)
            )
        logger.debug(
            "table search n=%d: nodes=%d solutions=%d rejected=%d",
            n, self.stats.nodes, self.stats.solutions, self.stats.rejected,
        )
        return result
