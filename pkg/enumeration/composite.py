from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from algebra.catalog import boolean_algebra
from algebra.structure import FiniteIpoAlgebra
from decomposition.system import DirectedSystem, IntegralComponent, PhiMap
from enumeration.posets import (
    JoinTable,
    bounded_posets,
    centralizer,
    join_leq,
    linear_extension,
    negation_classes,
    top_of,
)
from enumeration.search import SearchOptions, TableSearch
from glueing.glue import GlueOutcome, glue

logger = logging.getLogger(__name__)

Catalogue = Callable[[int], Sequence[FiniteIpoAlgebra]]


# --- integral components ---
@lru_cache(maxsize=None)
def _integral_components(size: int, commutative: bool, boolean: bool) -> Tuple[FiniteIpoAlgebra, ...]:
    if boolean:
        atoms = size.bit_length() - 1
        return (boolean_algebra(atoms),) if 1 << atoms == size else ()
    found: List[FiniteIpoAlgebra] = []
    for leq in bounded_posets(size):
        top = top_of(leq)
        for tilde in negation_classes(leq):
            search = TableSearch(
                leq,
                tilde,
                SearchOptions(unit=top, integral=True, commutative=commutative),
                centralizer(leq, tilde),
            )
            found.extend(search.algebras())
    logger.debug("integral components of size %d: %d", size, len(found))
    return tuple(found)


def integral_components(
    size: int, commutative: bool = False, boolean: bool = False
) -> List[FiniteIpoAlgebra]:
    """size 元の整 ipo モノイド（単位元つき）を同型を除いて並べる。

    boolean なら冪集合ブール代数だけ（size が 2 の冪のときに一つ）。
    """
    return list(_integral_components(size, commutative, boolean))


# --- admissible homomorphisms ---
def admissible_homs(
    src: FiniteIpoAlgebra, dst: FiniteIpoAlgebra, avoid_zero: bool
) -> List[Tuple[int, ...]]:
    """単位元・積・順序・均衡を保つ写像。avoid_zero なら 0 を 0 に送らない。"""
    n, m = src.n, dst.n
    src_unit, dst_unit = int(src.unit), int(dst.unit)  # type: ignore[arg-type]
    src_zero, dst_zero = int(src.tilde[src_unit]), int(dst.tilde[dst_unit])
    image = [-1] * n
    found: List[Tuple[int, ...]] = []

    def consistent(a: int) -> bool:
        va = image[a]
        for b in range(n):
            vb = image[b]
            if vb < 0:
                continue
            if src.leq[a, b] and not dst.leq[va, vb]:
                return False
            if src.leq[b, a] and not dst.leq[vb, va]:
                return False
            for left, right in ((a, b), (b, a)):
                product = image[int(src.mul[left, right])]
                if product >= 0 and product != int(dst.mul[image[left], image[right]]):
                    return False
        # ∼φ(−c) = −φ(∼c) を両辺が決まったところで確かめる
        for c in range(n):
            at_minus, at_tilde = image[int(src.minus[c])], image[int(src.tilde[c])]
            if at_minus >= 0 and at_tilde >= 0 and int(dst.tilde[at_minus]) != int(dst.minus[at_tilde]):
                return False
        return True

    order = [src_unit] + [a for a in range(n) if a != src_unit]

    def extend(position: int) -> None:
        if position == n:
            found.append(tuple(image))
            return
        a = order[position]
        candidates = [dst_unit] if a == src_unit else range(m)
        for value in candidates:
            if avoid_zero and a == src_zero and value == dst_zero:
                continue
            image[a] = value
            if consistent(a):
                extend(position + 1)
            image[a] = -1

    extend(0)
    return found


# --- families over a semilattice ---
def size_assignments(table: JoinTable, n: int, available: Callable[[int], bool]) -> Iterator[Tuple[int, ...]]:
    """各節点の成分の大きさ。1 は極小節点だけに置ける。"""
    k = len(table)
    leq = join_leq(table)
    minimal = [not any(leq[q][p] and q != p for q in range(k)) for p in range(k)]
    sizes = [0] * k

    def place(p: int, remaining: int) -> Iterator[Tuple[int, ...]]:
        if p == k:
            if remaining == 0:
                yield tuple(sizes)
            return
        low = 1 if minimal[p] else 2
        rest_low = sum(1 if minimal[q] else 2 for q in range(p + 1, k))
        for size in range(low, remaining - rest_low + 1):
            if not available(size):
                continue
            sizes[p] = size
            yield from place(p + 1, remaining - size)

    yield from place(0, n)


class FamilySearch:
    """固定した半束と成分の組に対し、条件を満たす準同型族を上から決めていく。"""

    def __init__(self, table: JoinTable, algebras: Sequence[FiniteIpoAlgebra]) -> None:
        self.table = table
        self.k = k = len(table)
        self.algebras = list(algebras)
        self.leq = join_leq(table)
        self.order = linear_extension(table)
        self.covers = [
            [
                q for q in range(k)
                if q != p and self.leq[p][q]
                and not any(r not in (p, q) and self.leq[p][r] and self.leq[r][q] for r in range(k))
            ]
            for p in range(k)
        ]
        self.units = [int(a.unit) for a in self.algebras]  # type: ignore[arg-type]
        self.zeros = [int(a.tilde[u]) for a, u in zip(self.algebras, self.units)]
        self._homs: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}

    def _candidates(self, p: int, q: int) -> List[Tuple[int, ...]]:
        if (p, q) not in self._homs:
            self._homs[(p, q)] = admissible_homs(self.algebras[p], self.algebras[q], avoid_zero=True)
        return self._homs[(p, q)]

    def _glued_leq(self, phi: PhiMap, q: int, a: int, r: int, b: int) -> bool:
        s = self.table[q][r]
        target = self.algebras[s]
        right = phi[(r, s)][int(self.algebras[r].tilde[b])]
        return int(target.mul[phi[(q, s)][a], right]) == self.zeros[s]

    def _admit(self, phi: PhiMap, p: int) -> bool:
        source = self.algebras[p]
        uppers = [q for q in range(self.k) if self.leq[p][q]]
        for q in uppers:
            if q == p:
                continue
            mapping = phi[(p, q)]
            target = self.algebras[q]
            if mapping[self.zeros[p]] == self.zeros[q]:
                return False
            for a in range(source.n):
                left = int(target.tilde[mapping[int(source.minus[a])]])
                if left != int(target.minus[mapping[int(source.tilde[a])]]):
                    return False
        # 貼り合わせた順序で ∼φ_pq(a) ≤ φ_pr(∼a)。両辺とも各々の成分の元
        for q in uppers:
            for r in uppers:
                for a in range(source.n):
                    lhs = int(self.algebras[q].tilde[phi[(p, q)][a]])
                    rhs = phi[(p, r)][int(source.tilde[a])]
                    if not self._glued_leq(phi, q, lhs, r, rhs):
                        return False
        return True

    def families(self) -> Iterator[PhiMap]:
        phi: PhiMap = {}
        for p, algebra in enumerate(self.algebras):
            phi[(p, p)] = tuple(range(algebra.n))
        yield from self._place(phi, 0)

    def _place(self, phi: PhiMap, position: int) -> Iterator[PhiMap]:
        if position == self.k:
            yield dict(phi)
            return
        p = self.order[position]
        covers = self.covers[p]
        if not covers:
            yield from self._place(phi, position + 1)
            return
        uppers = [q for q in range(self.k) if q != p and self.leq[p][q]]
        for choice in itertools.product(*(self._candidates(p, c) for c in covers)):
            composed: Dict[int, Tuple[int, ...]] = {}
            clash = False
            for c, mapping in zip(covers, choice):
                for q in uppers:
                    if not self.leq[c][q]:
                        continue
                    via = mapping if q == c else tuple(phi[(c, q)][v] for v in mapping)
                    if composed.setdefault(q, via) != via:
                        clash = True
                        break
                if clash:
                    break
            if clash:
                continue
            for q in uppers:
                phi[(p, q)] = composed[q]
            if self._admit(phi, p):
                yield from self._place(phi, position + 1)
            for q in uppers:
                del phi[(p, q)]


def systems_over(
    table: JoinTable, n: int, catalogue: Catalogue, require_minimum: bool = False
) -> Iterator[DirectedSystem]:
    """半束 table の上で全体が n 元になる条件つきの有向系をすべて作る。"""
    k = len(table)
    leq = join_leq(table)
    minimal = [p for p in range(k) if not any(leq[q][p] and q != p for q in range(k))]
    if require_minimum and len(minimal) != 1:
        return
    for sizes in size_assignments(table, n, lambda s: bool(catalogue(s))):
        for algebras in itertools.product(*(catalogue(s) for s in sizes)):
            components = []
            offset = 0
            for algebra in algebras:
                components.append(IntegralComponent(tuple(range(offset, offset + algebra.n)), algebra))
                offset += algebra.n
            for phi in FamilySearch(table, algebras).families():
                yield DirectedSystem(table, tuple(components), phi)


def glued_algebras(
    table: JoinTable, n: int, catalogue: Catalogue, require_minimum: bool = False
) -> Iterator[GlueOutcome]:
    for system in systems_over(table, n, catalogue, require_minimum):
        outcome = glue(system)
        if outcome.defects:
            logger.warning("composite search produced a defective glueing: %s", outcome.conditions())
            continue
        yield outcome


def catalogue_for(commutative: bool, boolean: bool) -> Catalogue:
    def catalogue(size: int) -> Sequence[FiniteIpoAlgebra]:
        return _integral_components(size, commutative, boolean)

    return catalogue


def needed_minimal(k: int, n: int) -> int:
    """k 節点で n 元にするのに必要な極小節点の数の下限。"""
    return max(0, 2 * k - n)


def max_nodes(n: int, require_minimum: bool) -> int:
    if require_minimum:
        return (n + 1) // 2
    return n

