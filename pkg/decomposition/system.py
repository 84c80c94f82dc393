from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from algebra.checks import check_integral
from algebra.errors import IncompatibleFamily, PreconditionError, StructureError
from algebra.structure import FiniteIpoAlgebra

PhiMap = Dict[Tuple[int, int], Tuple[int, ...]]


@dataclass(frozen=True)
class IntegralComponent:
    """整成分 A_p。carrier[i] が局所添字 i の親添字。"""

    carrier: Tuple[int, ...]
    algebra: FiniteIpoAlgebra

    @classmethod
    def standalone(cls, algebra: FiniteIpoAlgebra, offset: int = 0) -> "IntegralComponent":
        """単独の整 ipo モノイドを成分として包む。単位元は検出して宣言する。"""
        result = check_integral(algebra)
        if not result:
            raise PreconditionError(
                f"component is not integral: {result.condition} fails at {result.witness}"
            )
        return cls(tuple(range(offset, offset + algebra.n)), algebra.with_unit(result.element))

    @property
    def size(self) -> int:
        return self.algebra.n

    @property
    def unit(self) -> int:
        return int(self.algebra.unit)  # type: ignore[arg-type]

    @property
    def zero(self) -> int:
        return int(self.algebra.tilde[self.unit])

    @cached_property
    def _local(self) -> Dict[int, int]:
        return {parent: i for i, parent in enumerate(self.carrier)}

    def local_of(self, parent: int) -> int:
        return self._local[parent]

    def parent_of(self, local: int) -> int:
        return self.carrier[local]

    def contains(self, parent: int) -> bool:
        return parent in self._local

    def moved(self, offset: int) -> "IntegralComponent":
        return IntegralComponent(tuple(range(offset, offset + self.size)), self.algebra)


@dataclass(frozen=True)
class DirectedSystem:
    """半束有向系 (D, A_p, φ_pq)。p ≤ q ⟺ join[p][q] = q。"""

    join: Tuple[Tuple[int, ...], ...]
    components: Tuple[IntegralComponent, ...]
    phi: Mapping[Tuple[int, int], Tuple[int, ...]]

    @classmethod
    def from_algebras(
        cls,
        join: Sequence[Sequence[int]],
        algebras: Sequence[FiniteIpoAlgebra],
        phi: Mapping[Tuple[int, int], Sequence[int]],
        fill_identities: bool = True,
    ) -> "DirectedSystem":
        """手で組む系。親添字は節点順に連番で振る。φ_pp は省略可。"""
        components: List[IntegralComponent] = []
        offset = 0
        for algebra in algebras:
            component = IntegralComponent.standalone(algebra, offset)
            components.append(component)
            offset += component.size
        maps: PhiMap = {key: tuple(int(v) for v in value) for key, value in phi.items()}
        if fill_identities:
            for p, component in enumerate(components):
                maps.setdefault((p, p), tuple(range(component.size)))
        return cls(tuple(tuple(int(v) for v in row) for row in join), tuple(components), maps)

    @property
    def d_size(self) -> int:
        return len(self.join)

    @property
    def total_size(self) -> int:
        return sum(c.size for c in self.components)

    def leq(self, p: int, q: int) -> bool:
        return self.join[p][q] == q

    def pairs(self) -> Iterator[Tuple[int, int]]:
        for p in range(self.d_size):
            for q in range(self.d_size):
                if self.leq(p, q):
                    yield p, q

    def above(self, p: int) -> List[int]:
        return [q for q in range(self.d_size) if self.leq(p, q)]

    def minimum(self) -> Optional[int]:
        for p in range(self.d_size):
            if all(self.leq(p, q) for q in range(self.d_size)):
                return p
        return None

    def minimal_nodes(self) -> List[int]:
        return [
            p for p in range(self.d_size)
            if not any(self.leq(q, p) and q != p for q in range(self.d_size))
        ]

    @cached_property
    def locations(self) -> Tuple[Tuple[int, int], ...]:
        """親添字 → (節点, 局所添字)。carrier が 0..N-1 の分割でなければ StructureError。"""
        total = self.total_size
        slots: List[Optional[Tuple[int, int]]] = [None] * total
        for node, component in enumerate(self.components):
            for local, parent in enumerate(component.carrier):
                if not 0 <= parent < total or slots[parent] is not None:
                    raise StructureError(
                        f"carriers do not partition 0..{total - 1}: parent index {parent} "
                        f"(node {node})"
                    )
                slots[parent] = (node, local)
        return tuple(slots)  # type: ignore[arg-type]

    def validate(self) -> None:
        """半束則・成分数・φ の定義域と値域・恒等・合成・モノイド準同型を確かめる。"""
        size = self.d_size
        if len(self.components) != size:
            raise StructureError(f"{len(self.components)} components for {size} nodes")
        if any(len(row) != size for row in self.join):
            raise StructureError("join table is not square")
        _check_semilattice(self.join)
        _ = self.locations  # carrier が分割でなければここで落ちる
        expected = set(self.pairs())
        if set(self.phi) != expected:
            missing = sorted(expected - set(self.phi))
            extra = sorted(set(self.phi) - expected)
            raise IncompatibleFamily(f"phi keys mismatch: missing {missing}, unexpected {extra}")
        for (p, q), mapping in sorted(self.phi.items()):
            source, target = self.components[p], self.components[q]
            if len(mapping) != source.size or any(not 0 <= v < target.size for v in mapping):
                raise IncompatibleFamily(f"phi[{p},{q}] is not a map A_{p} -> A_{q}")
            if p == q and tuple(mapping) != tuple(range(source.size)):
                raise IncompatibleFamily(f"phi[{p},{p}] is not the identity")
            _check_monoid_hom(p, q, source.algebra, target.algebra, mapping)
        for p, q in sorted(expected):
            for r in self.above(q):
                composed = tuple(self.phi[(q, r)][a] for a in self.phi[(p, q)])
                if composed != tuple(self.phi[(p, r)]):
                    raise IncompatibleFamily(
                        f"phi[{q},{r}] . phi[{p},{q}] != phi[{p},{r}]"
                    )


def _check_semilattice(join: Sequence[Sequence[int]]) -> None:
    size = len(join)
    for p in range(size):
        if join[p][p] != p:
            raise StructureError(f"join[{p}][{p}] = {join[p][p]}: not idempotent")
        for q in range(size):
            if not 0 <= join[p][q] < size:
                raise StructureError(f"join[{p}][{q}] = {join[p][q]} is out of range")
            if join[p][q] != join[q][p]:
                raise StructureError(f"join[{p}][{q}] != join[{q}][{p}]")
            for r in range(size):
                if join[join[p][q]][r] != join[p][join[q][r]]:
                    raise StructureError(f"join is not associative at ({p}, {q}, {r})")


def _check_monoid_hom(
    p: int, q: int, source: FiniteIpoAlgebra, target: FiniteIpoAlgebra, mapping: Sequence[int]
) -> None:
    if mapping[int(source.unit)] != int(target.unit):  # type: ignore[arg-type]
        raise IncompatibleFamily(f"phi[{p},{q}] does not preserve the unit")
    for a in range(source.n):
        for b in range(source.n):
            if mapping[int(source.mul[a, b])] != int(target.mul[mapping[a], mapping[b]]):
                raise IncompatibleFamily(
                    f"phi[{p},{q}] is not multiplicative at local ({a}, {b})"
                )
