from __future__ import annotations

from hypothesis import strategies as st

from algebra.catalog import catalog
from algebra.checks import check_ipo
from duality.dual import UNDEFINED, compose_partial, dual_from_tables

ALGEBRAS = [alg for _, alg in catalog()]
IPO_ALGEBRAS = [alg for alg in ALGEBRAS if check_ipo(alg)["ipo_semigroup"]]
LOC_INT_ALGEBRAS = [alg for alg in IPO_ALGEBRAS if check_ipo(alg)["locally_integral"]]


def algebras(pool=IPO_ALGEBRAS):
    return st.sampled_from(pool)


@st.composite
def algebra_with_elements(draw, count: int = 3, pool=IPO_ALGEBRAS):
    alg = draw(algebras(pool))
    elements = tuple(draw(st.integers(0, alg.n - 1)) for _ in range(count))
    return alg, elements


@st.composite
def relabelled(draw, pool=IPO_ALGEBRAS):
    alg = draw(algebras(pool))
    perm = draw(st.permutations(range(alg.n)))
    return alg, tuple(perm)


@st.composite
def chain_duals(draw, max_nodes: int = 3, max_atoms: int = 3):
    """鎖の上の双対系。上の節点の原子は 1 個以上、被覆ごとの部分写像は非全域。"""
    k = draw(st.integers(1, max_nodes))
    atoms = [draw(st.integers(0, max_atoms))] + [draw(st.integers(1, max_atoms)) for _ in range(k - 1)]
    covers = []
    for p in range(k - 1):
        size_p, size_q = atoms[p], atoms[p + 1]
        values = [draw(st.integers(UNDEFINED, size_p - 1)) for _ in range(size_q)]
        if UNDEFINED not in values:
            values[draw(st.integers(0, size_q - 1))] = UNDEFINED
        covers.append(tuple(values))
    pmap = {}
    for p in range(k):
        pmap[(p, p)] = tuple(range(atoms[p]))
        for q in range(p + 1, k):
            pmap[(p, q)] = compose_partial(pmap[(p, q - 1)], covers[q - 1])
    join = tuple(tuple(max(p, q) for q in range(k)) for p in range(k))
    return dual_from_tables(join, atoms, pmap)


@st.composite
def v_duals(draw, max_atoms: int = 3):
    """極小節点 0, 1 とその結び 2 からなる V 字の双対系。2 への部分写像は非全域。"""
    atoms = [draw(st.integers(0, max_atoms)), draw(st.integers(0, max_atoms)), draw(st.integers(1, max_atoms))]
    pmap = {(p, p): tuple(range(atoms[p])) for p in range(3)}
    for p in (0, 1):
        values = [draw(st.integers(UNDEFINED, atoms[p] - 1)) for _ in range(atoms[2])]
        if UNDEFINED not in values:
            values[draw(st.integers(0, atoms[2] - 1))] = UNDEFINED
        pmap[(p, 2)] = tuple(values)
    join = ((0, 2, 2), (2, 1, 2), (2, 2, 2))
    return dual_from_tables(join, atoms, pmap)


def small_duals():
    return st.one_of(chain_duals(), v_duals())
