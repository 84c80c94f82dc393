from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.structure import FiniteIpoAlgebra

Labelling = Tuple[int, ...]


class _Structure:
    """色付き有限構造（関係・二項演算・一項演算）を正準形探索用に保持する。"""

    def __init__(
        self,
        n: int,
        relations: Sequence[np.ndarray],
        binaries: Sequence[np.ndarray],
        unaries: Sequence[np.ndarray],
    ) -> None:
        self.n = n
        self.relations = [np.asarray(r, dtype=bool) for r in relations]
        self.binaries = [np.asarray(b, dtype=np.int64) for b in binaries]
        self.unaries = [np.asarray(u, dtype=np.int64) for u in unaries]
        # 署名計算用に Python のリストへ
        self._rel = [r.tolist() for r in self.relations]
        self._bin = [b.tolist() for b in self.binaries]
        self._un = [u.tolist() for u in self.unaries]

    # --- colour refinement ---
    def _signature(self, x: int, colours: List[int]) -> tuple:
        n = self.n
        neighbours = []
        for y in range(n):
            neighbours.append((
                colours[y],
                tuple(r[x][y] for r in self._rel),
                tuple(r[y][x] for r in self._rel),
                tuple(colours[b[x][y]] for b in self._bin),
                tuple(colours[b[y][x]] for b in self._bin),
            ))
        neighbours.sort()
        return (colours[x], tuple(colours[u[x]] for u in self._un), tuple(neighbours))

    def refine(self, colours: List[int]) -> List[int]:
        count = len(set(colours))
        while True:
            signatures = [self._signature(x, colours) for x in range(self.n)]
            rank = {s: i for i, s in enumerate(sorted(set(signatures)))}
            refined = [rank[s] for s in signatures]
            if len(rank) == count:
                return refined
            colours, count = refined, len(rank)

    # --- leaves ---
    def serialize(self, labelling: Sequence[int]) -> bytes:
        perm = np.asarray(labelling, dtype=np.int64)
        inv = np.argsort(perm)
        parts = [bytes([self.n])]
        for r in self.relations:
            parts.append(r[np.ix_(inv, inv)].astype(np.uint8).tobytes())
        for b in self.binaries:
            parts.append(perm[b[np.ix_(inv, inv)]].astype(np.uint8).tobytes())
        for u in self.unaries:
            parts.append(perm[u[inv]].astype(np.uint8).tobytes())
        return b"".join(parts)


class _Search:
    """個別化と細分化による探索木。葉のうち直列化が最小のものを選ぶ。

    同じ直列化を与える葉の組から自己同型を拾い、接頭辞を固定する自己同型の
    軌道ごとに一つだけ枝を試す。
    """

    def __init__(self, structure: _Structure) -> None:
        self.structure = structure
        self.best_key: Optional[bytes] = None
        self.best_labelling: Optional[Labelling] = None
        self.first_key: Optional[bytes] = None
        self.first_labelling: Optional[Labelling] = None
        self.automorphisms: List[Labelling] = []

    def run(self, colours: List[int]) -> Tuple[bytes, Labelling]:
        self._descend(self.structure.refine(colours), ())
        return self.best_key, self.best_labelling  # type: ignore[return-value]

    def _leaf(self, colours: List[int]) -> None:
        labelling = tuple(colours)
        key = self.structure.serialize(labelling)
        if self.first_key is None:
            self.first_key, self.first_labelling = key, labelling
        elif key == self.first_key:
            self._record(self.first_labelling, labelling)
        if self.best_key is None or key < self.best_key:
            self.best_key, self.best_labelling = key, labelling
        elif key == self.best_key and labelling != self.best_labelling:
            self._record(self.best_labelling, labelling)

    def _record(self, one: Labelling, other: Labelling) -> None:
        # 同じ表を与える二つのラベル付け: x ↦ other⁻¹(one(x)) が自己同型
        inverse = {label: x for x, label in enumerate(other)}
        automorphism = tuple(inverse[one[x]] for x in range(len(one)))
        if automorphism not in self.automorphisms:
            self.automorphisms.append(automorphism)

    def _descend(self, colours: List[int], prefix: Tuple[int, ...]) -> None:
        n = self.structure.n
        sizes: Dict[int, int] = {}
        for c in colours:
            sizes[c] = sizes.get(c, 0) + 1
        splittable = [c for c in sorted(sizes) if sizes[c] > 1]
        if not splittable:
            self._leaf(colours)
            return
        target = splittable[0]
        cell = [x for x in range(n) if colours[x] == target]
        tried: List[int] = []
        for x in cell:
            if tried and self._same_orbit(x, tried, prefix):
                continue
            tried.append(x)
            individualized = [
                2 * c + (1 if c == target and y != x else 0) for y, c in enumerate(colours)
            ]
            self._descend(self.structure.refine(individualized), prefix + (x,))

    def _same_orbit(self, x: int, tried: List[int], prefix: Tuple[int, ...]) -> bool:
        generators = [
            g for g in self.automorphisms if all(g[v] == v for v in prefix)
        ]
        if not generators:
            return False
        orbit = {x}
        frontier = [x]
        while frontier:
            v = frontier.pop()
            for g in generators:
                w = g[v]
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        return any(t in orbit for t in tried)


def canonical_labelling(
    n: int,
    relations: Sequence[np.ndarray] = (),
    binaries: Sequence[np.ndarray] = (),
    unaries: Sequence[np.ndarray] = (),
    colours: Optional[Sequence[int]] = None,
) -> Tuple[bytes, Labelling]:
    """正準形のバイト列と、そこへ送るラベル付け（x ↦ 新しい添字）。"""
    structure = _Structure(n, relations, binaries, unaries)
    initial = list(colours) if colours is not None else [0] * n
    key, labelling = _Search(structure).run(initial)
    if colours is not None:
        inv = np.argsort(np.asarray(labelling))
        key += bytes(int(c) & 0xFF for c in np.asarray(initial)[inv])
    return key, labelling


def canonical_form(
    n: int,
    relations: Sequence[np.ndarray] = (),
    binaries: Sequence[np.ndarray] = (),
    unaries: Sequence[np.ndarray] = (),
    colours: Optional[Sequence[int]] = None,
) -> bytes:
    return canonical_labelling(n, relations, binaries, unaries, colours)[0]


def _algebra_labelling(alg: FiniteIpoAlgebra) -> Tuple[bytes, Labelling]:
    return canonical_labelling(alg.n, [alg.leq], [alg.mul], [alg.tilde, alg.minus])


def canonical_key(alg: FiniteIpoAlgebra) -> bytes:
    """(≤, ·, ∼, −) の同型類ごとに一意なバイト列。宣言された unit は含めない。"""
    return _algebra_labelling(alg)[0]


def find_isomorphism(a: FiniteIpoAlgebra, b: FiniteIpoAlgebra) -> Optional[Tuple[int, ...]]:
    """a → b の同型写像（a の添字 x の行き先の表）。なければ None。"""
    if a.n != b.n:
        return None
    key_a, label_a = _algebra_labelling(a)
    key_b, label_b = _algebra_labelling(b)
    if key_a != key_b:
        return None
    from_label = {label: y for y, label in enumerate(label_b)}
    return tuple(from_label[label_a[x]] for x in range(a.n))
