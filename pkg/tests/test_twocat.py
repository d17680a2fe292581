import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleislikit.config import EngineConfig
from kleislikit.exceptions import IllTypedPastingError, SerializationError, StructuralError
from kleislikit.fincat import identity_functor, terminal_cat, walking_arrow
from kleislikit.twocat import (
    Cell2,
    FixtureLibrary,
    Id2,
    LWhisk,
    Modification,
    PastingFixture,
    RWhisk,
    VComp,
    boundary,
    check_modification,
    check_pseudonatural,
    check_twofunctor,
    enumerate_modifications,
    enumerate_pseudonats,
    enumerate_twofunctors,
    eval_pasting,
    fixture_holds,
    fixture_value,
    from_dict,
    graded_functor,
    identity_modification,
    identity_pseudonat,
    identity_twofunctor,
    instantiate,
    locally_discrete,
    modification_inverse,
    modification_then,
    pastings_agree,
    pseudonat_postwhisker,
    pseudonat_prewhisker,
    pseudonat_then,
    scalar_cell,
    scalar_extension,
    scalar_order,
    to_dict,
    validate_2category,
    vcomp_all,
)


class TestFin2Category:
    @pytest.fixture
    def arrow3(self):
        return scalar_extension(walking_arrow(), 3)

    def test_scalar_extension_is_valid(self, arrow3):
        assert validate_2category(arrow3).ok
        assert scalar_order(arrow3) == 3
        assert len(arrow3.twocells) == 9
        assert arrow3.name == "walking_arrowxZ3"

    def test_locally_discrete(self):
        ld = locally_discrete(walking_arrow())
        assert validate_2category(ld).ok
        assert scalar_order(ld) == 1
        assert ld.name == "ld(walking_arrow)"
        assert ld.underlying_category() == walking_arrow()

    def test_order_must_be_positive(self):
        with pytest.raises(StructuralError, match="order must be positive"):
            scalar_extension(walking_arrow(), 0)

    def test_vertical_composition_adds_labels(self, arrow3):
        assert arrow3.vcomp(scalar_cell("f", 1), scalar_cell("f", 2)) == arrow3.id2("f")
        assert arrow3.inverse(scalar_cell("f", 1)) == scalar_cell("f", 2)

    def test_whiskering_keeps_labels(self, arrow3):
        assert arrow3.rwhisk(scalar_cell("id_a", 2), "f") == scalar_cell("f", 2)
        assert arrow3.lwhisk("f", scalar_cell("id_b", 1)) == scalar_cell("f", 1)
        assert arrow3.hcomp(scalar_cell("id_a", 1), scalar_cell("f", 1)) == scalar_cell("f", 2)

    def test_hom_category(self, arrow3):
        hom = arrow3.hom_category("a", "b")
        assert hom.objects == ("f",)
        assert len(hom.morphisms) == 3

    def test_broken_whiskering_is_reported(self):
        broken = scalar_extension(walking_arrow(), 3)
        broken.rwhisker[(scalar_cell("id_a", 1), "f")] = scalar_cell("f", 2)
        report = validate_2category(broken)
        assert not report.ok


class TestPasting:
    @pytest.fixture
    def arrow3(self):
        return scalar_extension(walking_arrow(), 3)

    def test_boundary(self, arrow3):
        e = RWhisk(Cell2(scalar_cell("id_a", 1)), "f")
        assert boundary(arrow3, e) == ("f", "f")

    def test_ill_typed_vertical_composite(self, arrow3):
        e = VComp(Cell2(scalar_cell("f", 1)), Cell2(scalar_cell("id_a", 0)))
        with pytest.raises(IllTypedPastingError, match="Vertical composite"):
            eval_pasting(arrow3, e)

    def test_unknown_cell(self, arrow3):
        with pytest.raises(IllTypedPastingError, match="Unknown 2-cell"):
            boundary(arrow3, Cell2("nope"))

    def test_sides_must_be_parallel(self, arrow3):
        with pytest.raises(IllTypedPastingError, match="not parallel"):
            pastings_agree(arrow3, Id2("f"), Id2("id_a"))

    def test_expression_dict_form(self):
        e = vcomp_all(Cell2("a"), LWhisk("f", Id2("g")), RWhisk(Cell2("b"), "h"))
        assert from_dict(json.loads(json.dumps(to_dict(e)))) == e

    def test_unknown_operation(self):
        with pytest.raises(SerializationError, match="Unknown pasting operation"):
            from_dict({"op": "hcomp"})

    @given(
        st.lists(st.tuples(st.booleans(), st.integers(min_value=0, max_value=2)),
                 min_size=1, max_size=6),
        st.integers(min_value=0, max_value=1000),
    )
    @settings(max_examples=25, deadline=None)
    def test_value_is_independent_of_bracketing(self, steps, seed):
        c = scalar_extension(walking_arrow(), 3)
        parts = []
        for whiskered, k in steps:
            if whiskered:
                parts.append(RWhisk(Cell2(scalar_cell("id_a", k)), "f"))
            else:
                parts.append(LWhisk("f", Cell2(scalar_cell("id_b", k))))
        e = vcomp_all(*parts)
        expected = scalar_cell("f", sum(k for _, k in steps) % 3)
        assert eval_pasting(c, e) == expected
        debug = EngineConfig(debug_pasting=True, reassociation_trials=40, seed=seed)
        assert eval_pasting(c, e, debug) == expected


class TestFixtures:
    @pytest.fixture
    def library(self, tmp_path):
        (tmp_path / "cancel.pexpr").write_text(json.dumps({
            "name": "cancel",
            "params": ["a"],
            "expr": {"op": "vcomp", "args": [
                {"op": "cell", "ref": "a"},
                {"op": "cell", "ref": "a", "inverse": True},
            ]},
        }))
        (tmp_path / "slide.pexpr").write_text(json.dumps({
            "name": "slide",
            "params": ["a", "g", "b"],
            "lhs": {"op": "rwhisk", "body": {"op": "cell", "ref": "a"}, "onecell": "g"},
            "rhs": {"op": "cell", "ref": "b"},
        }))
        return FixtureLibrary(tmp_path)

    def test_names(self, library):
        assert library.names() == ("cancel", "slide")

    def test_construction_fixture(self, library):
        c = scalar_extension(walking_arrow(), 3)
        value = fixture_value(library["cancel"], c, {"a": scalar_cell("f", 1)})
        assert value == c.id2("f")

    def test_equation_fixture(self, library):
        c = scalar_extension(walking_arrow(), 3)
        bindings = {"a": scalar_cell("id_a", 1), "g": "f", "b": scalar_cell("f", 1)}
        assert fixture_holds(library["slide"], c, bindings)
        bindings["b"] = scalar_cell("f", 2)
        assert not fixture_holds(library["slide"], c, bindings)

    def test_missing_binding(self, library):
        c = scalar_extension(walking_arrow(), 3)
        with pytest.raises(StructuralError, match="missing bindings"):
            instantiate(library["slide"], c, {"a": scalar_cell("id_a", 1)})

    def test_unknown_fixture(self, library):
        with pytest.raises(StructuralError, match="No pasting fixture"):
            library["absent"]

    def test_fixture_needs_a_body(self):
        with pytest.raises(SerializationError):
            PastingFixture.from_dict({"name": "empty"})


class TestTwoFunctors:
    def test_identity_is_valid(self):
        assert check_twofunctor(identity_twofunctor(scalar_extension(walking_arrow(), 2))).ok

    def test_graded_functor(self):
        assert check_twofunctor(graded_functor(identity_functor(walking_arrow()), 2)).ok

    def test_automorphisms_of_cyclic_cells(self):
        c = scalar_extension(terminal_cat(), 3)
        assert len(enumerate_twofunctors(c, c)) == 3

    def test_locally_discrete_functors(self):
        ld = locally_discrete(walking_arrow())
        assert len(enumerate_twofunctors(ld, ld)) == 3


class TestPseudoNat:
    @pytest.fixture
    def cyclic(self):
        return scalar_extension(terminal_cat(), 3)

    def test_identity(self, cyclic):
        one = identity_twofunctor(cyclic)
        sigma = identity_pseudonat(one)
        assert check_pseudonatural(sigma).ok
        assert enumerate_pseudonats(one, one) == [sigma]
        assert pseudonat_then(sigma, sigma) == sigma

    def test_modifications_are_scalars(self, cyclic):
        sigma = identity_pseudonat(identity_twofunctor(cyclic))
        found = enumerate_modifications(sigma, sigma)
        assert len(found) == 3
        assert identity_modification(sigma) in found
        assert all(m.is_invertible for m in found)

    def test_modification_group(self, cyclic):
        sigma = identity_pseudonat(identity_twofunctor(cyclic))
        one = Modification(sigma, sigma, {"*": scalar_cell("id_*", 1)})
        assert check_modification(one).ok
        inverse = modification_inverse(one)
        assert inverse.components == {"*": scalar_cell("id_*", 2)}
        assert modification_then(one, inverse) == identity_modification(sigma)

    def test_whiskering_by_identity(self, cyclic):
        one = identity_twofunctor(cyclic)
        sigma = identity_pseudonat(one)
        for whiskered in (pseudonat_postwhisker(sigma, one), pseudonat_prewhisker(sigma, one)):
            assert check_pseudonatural(whiskered).ok
            assert whiskered.components == sigma.components
            assert whiskered.cells == sigma.cells

    def test_twocells_between(self, cyclic):
        assert len(cyclic.twocells_between("id_*", "id_*")) == 3
        assert len(cyclic.invertible_twocells_between("id_*", "id_*")) == 3
