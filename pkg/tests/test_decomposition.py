from __future__ import annotations

import numpy as np
import pytest

from algebra.catalog import boolean_algebra, lukasiewicz_chain
from algebra.checks import check_integral, check_morphism
from algebra.derived import global_identity
from algebra.errors import (
    IncompatibleFamily,
    MorphismError,
    NotLocallyIntegral,
    PreconditionError,
    StructureError,
)
from decomposition.decompose import component_of, component_of_by_bounds, decompose
from decomposition.morphisms import check_naturality, induced_morphism, morphism_components
from decomposition.system import DirectedSystem, IntegralComponent
from enumeration.classes import AlgebraClass
from enumeration.enumerate import enumerate_algebras
from glueing.glue import glue


class TestDecompose:
    def test_diamond_has_three_components(self, diamond):
        system = decompose(diamond)
        assert system.d_size == 3
        assert [c.carrier for c in system.components] == [(1,), (2,), (0, 3)]
        # p ∨ q = ⊤
        assert system.join[0][1] == 2
        assert system.minimal_nodes() == [0, 1]
        assert system.minimum() is None

    def test_components_are_integral(self, diamond):
        for component in decompose(diamond).components:
            assert check_integral(component.algebra)

    def test_bottom_lies_in_top_component(self, diamond):
        assert component_of(diamond, 0) == 2
        assert component_of_by_bounds(diamond, 0) == 2
        for x in range(diamond.n):
            assert component_of(diamond, x) == component_of_by_bounds(diamond, x)

    def test_integral_algebra_is_one_component(self):
        system = decompose(lukasiewicz_chain(4))
        assert system.d_size == 1
        assert system.phi[(0, 0)] == (0, 1, 2, 3)

    def test_round_trip_is_exact(self, diamond):
        outcome = glue(decompose(diamond))
        assert outcome.ok
        assert outcome.algebra == diamond

    def test_not_locally_integral(self, noncyclic):
        with pytest.raises(NotLocallyIntegral) as info:
            decompose(noncyclic)
        assert info.value.condition == "locally_integral"


class TestSystemValidation:
    def test_carriers_must_partition(self, diamond):
        system = decompose(diamond)
        broken = DirectedSystem(
            system.join,
            (system.components[0].moved(2),) + system.components[1:],
            system.phi,
        )
        with pytest.raises(StructureError, match="partition"):
            broken.validate()

    def test_identity_map_required(self):
        square = boolean_algebra(1)
        with pytest.raises(IncompatibleFamily, match="identity"):
            DirectedSystem.from_algebras(((0,),), [square], {(0, 0): (1, 1)}).validate()

    def test_composition_enforced(self):
        two = boolean_algebra(1)
        join = tuple(tuple(max(p, q) for q in range(3)) for p in range(3))
        phi = {(0, 1): (0, 1), (1, 2): (1, 1), (0, 2): (0, 1)}
        with pytest.raises(IncompatibleFamily, match="phi"):
            DirectedSystem.from_algebras(join, [two, two, two], phi).validate()

    def test_standalone_rejects_non_integral(self, diamond):
        with pytest.raises(PreconditionError):
            IntegralComponent.standalone(diamond)


class TestMorphismComponents:
    def test_identity_splits_into_identities(self, diamond):
        system = decompose(diamond)
        parts = morphism_components(system, system, list(range(diamond.n)))
        assert parts.tau == (0, 1, 2)
        assert parts.eta == ((0,), (0,), (0, 1))
        assert parts.naturality

    def test_swap_of_atoms_is_natural(self, diamond):
        system = decompose(diamond)
        tau, eta = (1, 0, 2), ((0,), (0,), (0, 1))
        assert check_naturality(system, system, tau, eta)
        h = induced_morphism(system, system, tau, eta)
        assert h == (0, 2, 1, 3)
        assert check_morphism(diamond, diamond, h, embedding=True)

    def test_non_join_map_detected(self, diamond):
        system = decompose(diamond)
        result = check_naturality(system, system, (0, 0, 2), ((0,), (0,), (0, 1)))
        assert not result
        assert result.condition == "join"
        assert result.witness == (0, 1)

    def test_non_morphism_rejected(self, diamond):
        system = decompose(diamond)
        with pytest.raises(MorphismError):
            morphism_components(system, system, [0, 0, 0, 0])


def _same_tables(glued, alg) -> bool:
    return all(
        np.array_equal(getattr(glued, name), getattr(alg, name))
        for name in ("leq", "mul", "tilde", "minus")
    )


@pytest.mark.parametrize(
    "n", [pytest.param(n, marks=() if n <= 5 else pytest.mark.slow) for n in range(1, 7)]
)
def test_glue_inverts_decompose_on_enumerated_algebras(n):
    result = enumerate_algebras(AlgebraClass.LOC_INT_IPO_SEMIGROUP, n, retain=True)
    assert result.representatives
    for alg in result.representatives:
        system = decompose(alg)
        outcome = glue(system)
        assert outcome.ok, outcome.conditions()
        assert _same_tables(outcome.algebra, alg)
        # 最小の正元があるときだけ大域単位元になる
        assert outcome.algebra.unit == global_identity(alg)
