from __future__ import annotations

from typing import List

from algebra.structure import FiniteIpoAlgebra
from decomposition.system import DirectedSystem


def glue_tables(system: DirectedSystem) -> FiniteIpoAlgebra:
    """Płonka 和・成分ごとの否定・a ≤ b ⟺ a·∼b = 0_{p∨q} で表を組む。

    関係が半順序かどうかはここでは問わない。要素の添字は各成分の carrier。
    """
    locations = system.locations
    total = len(locations)
    components = system.components
    zeros = [c.parent_of(c.zero) for c in components]

    mul: List[List[int]] = [[0] * total for _ in range(total)]
    for e, (p, a) in enumerate(locations):
        for f, (q, b) in enumerate(locations):
            r = system.join[p][q]
            target = components[r]
            value = target.algebra.mul[system.phi[(p, r)][a], system.phi[(q, r)][b]]
            mul[e][f] = target.parent_of(int(value))

    tilde = [0] * total
    minus = [0] * total
    for e, (p, a) in enumerate(locations):
        component = components[p]
        tilde[e] = component.parent_of(int(component.algebra.tilde[a]))
        minus[e] = component.parent_of(int(component.algebra.minus[a]))

    leq = [[0] * total for _ in range(total)]
    for e, (p, _) in enumerate(locations):
        for f, (q, _) in enumerate(locations):
            leq[e][f] = int(mul[e][tilde[f]] == zeros[system.join[p][q]])

    bottom = system.minimum()
    unit = None if bottom is None else components[bottom].parent_of(components[bottom].unit)
    return FiniteIpoAlgebra.from_tables(leq, mul, tilde, minus, unit=unit)
