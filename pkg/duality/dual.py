from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from algebra.catalog import boolean_algebra
from algebra.checks import check_ipo
from algebra.errors import DualSystemError, NotIdempotentLocIntegral, PreconditionError, StructureError
from algebra.structure import FiniteIpoAlgebra
from decomposition.decompose import decompose
from decomposition.system import DirectedSystem
from enumeration.canonical import canonical_form, canonical_key
from glueing.glue import glue

logger = logging.getLogger(__name__)

# 部分写像で値のないところ
UNDEFINED = -1

PartialMap = Tuple[int, ...]


@dataclass(frozen=True)
class DualSystem:
    """半束・節点ごとの原子の数・p ≤ q ごとの部分写像 atoms(q) ⇀ atoms(p)。"""

    join: Tuple[Tuple[int, ...], ...]
    atoms: Tuple[int, ...]
    pmap: Mapping[Tuple[int, int], PartialMap]

    @property
    def d_size(self) -> int:
        return len(self.join)

    def leq(self, p: int, q: int) -> bool:
        return self.join[p][q] == q

    def pairs(self) -> List[Tuple[int, int]]:
        return [(p, q) for p in range(self.d_size) for q in range(self.d_size) if self.leq(p, q)]

    def validate(self) -> None:
        size = self.d_size
        if len(self.atoms) != size:
            raise DualSystemError(f"{len(self.atoms)} atom sets for {size} nodes")
        for p in range(size):
            for q in range(size):
                if self.join[p][q] != self.join[q][p] or self.join[p][p] != p:
                    raise DualSystemError(f"join table is not a semilattice at ({p}, {q})")
        expected = set(self.pairs())
        if set(self.pmap) != expected:
            raise DualSystemError(
                f"pmap keys mismatch: missing {sorted(expected - set(self.pmap))}, "
                f"unexpected {sorted(set(self.pmap) - expected)}"
            )
        for (p, q), f in sorted(self.pmap.items()):
            if len(f) != self.atoms[q] or any(v != UNDEFINED and not 0 <= v < self.atoms[p] for v in f):
                raise DualSystemError(f"pmap[{p},{q}] is not a partial map atoms({q}) -> atoms({p})")
            total = UNDEFINED not in f
            if p == q and tuple(f) != tuple(range(self.atoms[p])):
                raise DualSystemError(f"pmap[{p},{p}] is not the identity")
            if p != q and total:
                raise DualSystemError(f"pmap[{p},{q}] is total although {p} < {q}")
        for p, q in sorted(expected):
            for r in range(size):
                if not self.leq(q, r):
                    continue
                composed = compose_partial(self.pmap[(p, q)], self.pmap[(q, r)])
                if composed != tuple(self.pmap[(p, r)]):
                    raise DualSystemError(f"pmap[{p},{q}] . pmap[{q},{r}] != pmap[{p},{r}]")


def compose_partial(f_pq: Sequence[int], f_qr: Sequence[int]) -> PartialMap:
    """f_pr = f_pq ∘ f_qr（どちらかが未定義なら未定義）。"""
    return tuple(UNDEFINED if b == UNDEFINED else int(f_pq[b]) for b in f_qr)


def _component_atoms(component) -> List[int]:
    alg = component.algebra
    zero = component.zero
    atoms = []
    for a in range(alg.n):
        if a == zero:
            continue
        # zero の直上
        if not any(b not in (a, zero) and alg.leq[b, a] for b in range(alg.n)):
            atoms.append(a)
    return sorted(atoms, key=component.parent_of)


def dualize(alg: FiniteIpoAlgebra) -> DualSystem:
    """冪等な局所整 ipo 半束の双対。成分ごとの原子と φ の部分逆写像を取る。"""
    report = check_ipo(alg)
    for flag in ("ipo_semigroup", "locally_integral", "idempotent"):
        if not report[flag]:
            raise NotIdempotentLocIntegral(f"dualize needs an idempotent locally integral algebra: {flag} fails")
    system = decompose(alg)
    atom_lists: List[List[int]] = []
    for node, component in enumerate(system.components):
        atoms = _component_atoms(component)
        if component.size != 1 << len(atoms):
            raise DualSystemError(f"component {node} is not a Boolean algebra")
        atom_lists.append(atoms)

    pmap: Dict[Tuple[int, int], PartialMap] = {}
    for p, q in system.pairs():
        source = system.components[p]
        target = system.components[q].algebra
        phi = system.phi[(p, q)]
        undefined_above = phi[source.zero]
        values = []
        for b in atom_lists[q]:
            if target.leq[b, undefined_above]:
                values.append(UNDEFINED)
                continue
            hits = [i for i, a in enumerate(atom_lists[p]) if target.leq[b, phi[a]]]
            if len(hits) != 1:
                raise DualSystemError(f"atom {b} of node {q} has {len(hits)} preimage atoms in node {p}")
            values.append(hits[0])
        pmap[(p, q)] = tuple(values)
    dual = DualSystem(system.join, tuple(len(a) for a in atom_lists), pmap)
    logger.debug("dualize: %d nodes, atoms %s", dual.d_size, dual.atoms)
    return dual


def partial_inverse_image(f: Sequence[int], k_p: int, k_q: int) -> Tuple[int, ...]:
    """𝒫(f): 2^atoms(p) → 2^atoms(q)、S ↦ U_f ∪ {x : f(x) ∈ S}（ビットマスク）。"""
    if len(f) != k_q:
        raise DualSystemError(f"partial map has {len(f)} entries, expected {k_q}")
    undefined = sum(1 << x for x, v in enumerate(f) if v == UNDEFINED)
    images = []
    for subset in range(1 << k_p):
        mask = undefined
        for x, v in enumerate(f):
            if v != UNDEFINED and subset >> v & 1:
                mask |= 1 << x
        images.append(mask)
    return tuple(images)


def primal_system(dual: DualSystem) -> DirectedSystem:
    dual.validate()
    algebras = [boolean_algebra(k) for k in dual.atoms]
    phi = {
        (p, q): partial_inverse_image(f, dual.atoms[p], dual.atoms[q])
        for (p, q), f in dual.pmap.items()
    }
    return DirectedSystem.from_algebras(dual.join, algebras, phi)


def primalize(dual: DualSystem) -> FiniteIpoAlgebra:
    """各節点を原子集合の冪集合にし、部分逆像で貼り合わせる。"""
    outcome = glue(primal_system(dual))
    if outcome.defects:
        raise DualSystemError(
            "dual system glues with defects: "
            + ", ".join(f"{d.condition} at {d.witness}" for d in outcome.defects)
        )
    return outcome.algebra


def multiplicative_order(alg: FiniteIpoAlgebra) -> np.ndarray:
    """x ⊑ y ⟺ x·y = x"""
    report = check_ipo(alg)
    if not (report["idempotent"] and report["commutative"]):
        raise PreconditionError("multiplicative order needs an idempotent commutative product")
    return alg.mul == np.arange(alg.n)[:, None]


def _boolean_components(alg: FiniteIpoAlgebra) -> bool:
    for component in decompose(alg).components:
        atoms = len(_component_atoms(component))
        if component.size != 1 << atoms:
            return False
        if canonical_key(component.algebra) != canonical_key(boolean_algebra(atoms)):
            return False
    return True


def idempotent_criteria(alg: FiniteIpoAlgebra) -> Dict[str, bool]:
    """冪等な ipo 半群で互いに同値になる五つの条件の判定。

    balanced は −x·x = x·∼x、boolean_components は局所整で成分がすべてブール代数。
    """
    report = check_ipo(alg)
    if not (report["ipo_semigroup"] and report["idempotent"]):
        raise PreconditionError("criteria apply to idempotent ipo-semigroups only")
    ar = np.arange(alg.n)
    return {
        "balanced": bool(np.array_equal(alg.mul[alg.minus, ar], alg.mul[ar, alg.tilde])),
        "commutative": report["commutative"],
        "local_identities": report["has_local_identities"],
        "cyclic": report["cyclic"],
        "boolean_components": report["locally_integral"] and _boolean_components(alg),
    }


# --- isomorphism ---
def dual_key(dual: DualSystem) -> bytes:
    """節点と原子をまとめた色付き構造の正準形。"""
    k = dual.d_size
    offsets = []
    total = k
    for count in dual.atoms:
        offsets.append(total)
        total += count
    node_order = np.zeros((total, total), dtype=bool)
    belongs = np.zeros((total, total), dtype=bool)
    maps_to = np.zeros((total, total), dtype=bool)
    for p in range(k):
        for q in range(k):
            node_order[p, q] = dual.leq(p, q)
        for a in range(dual.atoms[p]):
            belongs[offsets[p] + a, p] = True
    for (p, q), f in dual.pmap.items():
        for b, a in enumerate(f):
            if a != UNDEFINED:
                maps_to[offsets[q] + b, offsets[p] + a] = True
    colours = [0] * k + [1] * (total - k)
    return canonical_form(total, [node_order, belongs, maps_to], colours=colours)


def is_isomorphic_dual(one: DualSystem, other: DualSystem) -> bool:
    if one.d_size != other.d_size or sorted(one.atoms) != sorted(other.atoms):
        return False
    return dual_key(one) == dual_key(other)


def dual_from_tables(
    join: Sequence[Sequence[int]], atoms: Sequence[int], pmap: Mapping[Tuple[int, int], Sequence[int]]
) -> DualSystem:
    try:
        dual = DualSystem(
            tuple(tuple(int(v) for v in row) for row in join),
            tuple(int(a) for a in atoms),
            {key: tuple(int(v) for v in value) for key, value in pmap.items()},
        )
    except (TypeError, ValueError) as e:
        raise StructureError(f"malformed dual system: {e}") from e
    dual.validate()
    return dual
