from __future__ import annotations

from typing import Optional

from algebra.checks import CheckResult
from algebra.structure import FiniteIpoAlgebra
from decomposition.system import DirectedSystem
from glueing.plonka import glue_tables

_PASS = CheckResult(True)


def verify_za(system: DirectedSystem) -> CheckResult:
    """零回避: p < q なら φ_pq(0_p) ≠ 0_q。"""
    for p, q in system.pairs():
        if p == q:
            continue
        source, target = system.components[p], system.components[q]
        if system.phi[(p, q)][source.zero] == target.zero:
            return CheckResult(False, (p, q), "za")
    return _PASS


def verify_bal(system: DirectedSystem) -> CheckResult:
    """∼φ_pq(−a) = −φ_pq(∼a)"""
    for p, q in system.pairs():
        source = system.components[p].algebra
        target = system.components[q].algebra
        phi = system.phi[(p, q)]
        for a in range(source.n):
            left = int(target.tilde[phi[int(source.minus[a])]])
            right = int(target.minus[phi[int(source.tilde[a])]])
            if left != right:
                parent = system.components[p].parent_of(a)
                return CheckResult(False, (p, q, parent), "bal")
    return _PASS


def verify_mon(system: DirectedSystem) -> CheckResult:
    for p, q in system.pairs():
        source = system.components[p].algebra
        target = system.components[q].algebra
        phi = system.phi[(p, q)]
        for a in range(source.n):
            for b in range(source.n):
                if source.leq[a, b] and not target.leq[phi[a], phi[b]]:
                    parents = system.components[p].carrier
                    return CheckResult(False, (p, q, parents[a], parents[b]), "mon")
    return _PASS


def verify_lax(system: DirectedSystem, glued: Optional[FiniteIpoAlgebra] = None) -> CheckResult:
    """p ≤ q, p ≤ r で ∼φ_pq(a) ≤ φ_pr(∼a)。≤ は貼り合わせの関係で評価する。"""
    glued = glued if glued is not None else glue_tables(system)
    for p in range(system.d_size):
        source = system.components[p]
        uppers = system.above(p)
        for q in uppers:
            target_q = system.components[q]
            for r in uppers:
                target_r = system.components[r]
                for a in range(source.size):
                    lhs = target_q.parent_of(
                        int(target_q.algebra.tilde[system.phi[(p, q)][a]])
                    )
                    rhs = target_r.parent_of(
                        system.phi[(p, r)][int(source.algebra.tilde[a])]
                    )
                    if not glued.leq[lhs, rhs]:
                        return CheckResult(False, (p, q, r, source.parent_of(a)), "lax")
    return _PASS


def verify_star(system: DirectedSystem, glued: Optional[FiniteIpoAlgebra] = None) -> CheckResult:
    """a·∼b = 0_{p∨q} ⟺ −b·a = 0_{p∨q}"""
    glued = glued if glued is not None else glue_tables(system)
    locations = system.locations
    zeros = [c.parent_of(c.zero) for c in system.components]
    for a, (p, _) in enumerate(locations):
        for b, (q, _) in enumerate(locations):
            zero = zeros[system.join[p][q]]
            left = int(glued.mul[a, glued.tilde[b]]) == zero
            right = int(glued.mul[glued.minus[b], a]) == zero
            if left != right:
                return CheckResult(False, (a, b), "star")
    return _PASS
