import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleislikit.config import EngineConfig
from kleislikit.exceptions import (
    LawViolationError,
    SizeGuardError,
    StructuralError,
    UnknownCellError,
)
from kleislikit.fincat import (
    FinCategory,
    NatTrans,
    chain,
    check_functor,
    check_natural,
    enumerate_categories,
    enumerate_endofunctors,
    enumerate_functors,
    enumerate_nat_trans,
    factor_bo_ff,
    find_isomorphism,
    identity_functor,
    identity_nat,
    is_equivalence,
    is_faithful,
    is_full,
    is_isomorphism,
    isomorphic,
    parallel_pair,
    span_to_terminal,
    terminal_cat,
    validate_category,
    walking_arrow,
)


class TestFinCategory:
    @pytest.fixture
    def arrow(self):
        return walking_arrow()

    def test_standard_categories_are_valid(self):
        for c in (terminal_cat(), walking_arrow(), parallel_pair(), span_to_terminal(), chain(3)):
            assert validate_category(c).ok, c.name

    def test_diagrammatic_composition(self):
        c = chain(3)
        assert c.then("0<=1", "1<=2") == "0<=2"
        assert c.comp("1<=2", "0<=1") == "0<=2"

    def test_identity_lookup(self, arrow):
        assert arrow.identity("a") == "id_a"
        assert arrow.is_identity("id_b")
        assert not arrow.is_identity("f")

    def test_unknown_morphism(self, arrow):
        with pytest.raises(UnknownCellError, match="Unknown morphism"):
            arrow.src("g")

    def test_missing_composite(self, arrow):
        with pytest.raises(UnknownCellError, match="No composite"):
            arrow.then("f", "f")

    def test_then_needs_an_argument(self, arrow):
        with pytest.raises(StructuralError):
            arrow.then()

    def test_equality_is_table_identity(self):
        assert walking_arrow() == walking_arrow()
        assert hash(walking_arrow()) == hash(walking_arrow())
        assert walking_arrow() != parallel_pair()

    def test_inverse(self, arrow):
        assert arrow.inverse("f") is None
        assert arrow.inverse("id_a") == "id_a"

    def test_opposite(self, arrow):
        op = arrow.opposite()
        assert op.morphisms["f"] == ("b", "a")
        assert validate_category(op).ok

    def test_hom_sizes(self, arrow):
        sizes = arrow.hom_sizes()
        assert sizes == {("a", "a"): 1, ("a", "b"): 1, ("b", "a"): 0, ("b", "b"): 1}

    def test_subcategory_must_be_closed(self):
        with pytest.raises(StructuralError, match="not closed"):
            chain(3).subcategory(["0<=1", "1<=2"])

    def test_full_subcategory(self):
        sub = chain(3).full_subcategory(["0", "2"])
        assert set(sub.morphisms) == {"0<=0", "0<=2", "2<=2"}
        assert validate_category(sub).ok

    @given(st.integers(min_value=1, max_value=5))
    @settings(max_examples=5, deadline=None)
    def test_chain_has_all_comparable_pairs(self, n):
        c = chain(n)
        assert len(c.morphisms) == n * (n + 1) // 2
        assert validate_category(c).ok


class TestValidateCategory:
    @pytest.fixture
    def arrow(self):
        return walking_arrow()

    @pytest.fixture
    def idempotent_table(self):
        return {("id_*", "id_*"): "id_*", ("id_*", "e"): "e", ("e", "id_*"): "e", ("e", "e"): "e"}

    def _idempotent(self, table):
        morphisms = {"id_*": ("*", "*"), "e": ("*", "*")}
        return FinCategory(["*"], morphisms, {"*": "id_*"}, table, "idempotent")

    def test_idempotent_monoid_is_valid(self, idempotent_table):
        assert validate_category(self._idempotent(idempotent_table)).ok

    def test_broken_identity_law(self, idempotent_table):
        table = dict(idempotent_table)
        table[("id_*", "e")] = "id_*"
        report = validate_category(self._idempotent(table))
        assert not report.ok
        assert report.structural == []
        assert [v["law"] for v in report.violations] == ["left_identity"]

    def test_missing_pair_is_structural(self, arrow):
        table = dict(arrow.compose_table)
        del table[("f", "id_b")]
        broken = FinCategory(arrow.objects, arrow.morphisms, arrow.identities, table)
        report = validate_category(broken)
        assert report.structural[0]["message"] == "composable pair missing from table"
        assert report.violations == []

    def test_dangling_endpoint(self, arrow):
        morphisms = dict(arrow.morphisms)
        morphisms["g"] = ("a", "z")
        broken = FinCategory(arrow.objects, morphisms, arrow.identities, arrow.compose_table)
        report = validate_category(broken)
        assert any(e["message"] == "morphism endpoint is not an object" for e in report.structural)

    def test_raise_for_violations(self, idempotent_table):
        table = dict(idempotent_table)
        table[("id_*", "e")] = "id_*"
        report = validate_category(self._idempotent(table))
        with pytest.raises(LawViolationError, match="left_identity"):
            report.raise_for_violations()

    def test_composite_with_wrong_endpoints(self):
        morphisms = {"id_a": ("a", "a"), "id_b": ("b", "b"), "id_c": ("c", "c"),
                     "f": ("a", "b"), "g": ("b", "c")}
        identities = {"a": "id_a", "b": "id_b", "c": "id_c"}
        table = {(i, i): i for i in identities.values()}
        table.update({("id_a", "f"): "f", ("f", "id_b"): "f",
                      ("id_b", "g"): "g", ("g", "id_c"): "g", ("f", "g"): "g"})
        report = validate_category(FinCategory(["a", "b", "c"], morphisms, identities, table))
        assert not report.ok
        assert [e["message"] for e in report.structural] == ["composite has wrong endpoints"]
        with pytest.raises(StructuralError):
            report.raise_for_violations()


class TestFunctors:
    def test_identity_functor_is_isomorphism(self):
        i = identity_functor(span_to_terminal())
        assert check_functor(i).ok
        assert is_isomorphism(i)

    def test_functors_on_walking_arrow(self):
        assert len(enumerate_functors(walking_arrow(), walking_arrow())) == 3
        endo = enumerate_endofunctors(walking_arrow())
        assert endo == enumerate_functors(walking_arrow(), walking_arrow())

    def test_collapse_to_terminal(self):
        [collapse] = enumerate_functors(walking_arrow(), terminal_cat())
        assert is_faithful(collapse)
        assert not is_full(collapse)
        assert not is_equivalence(collapse)

    def test_bo_ff_factorisation(self):
        [collapse] = enumerate_functors(walking_arrow(), terminal_cat())
        bo, ff = factor_bo_ff(collapse)
        assert bo.then(ff) == collapse
        assert len(bo.target.morphisms) == 4
        assert validate_category(bo.target).ok

    def test_bo_ff_of_identity(self):
        i = identity_functor(walking_arrow())
        bo, ff = factor_bo_ff(i)
        assert bo.target == walking_arrow()

    def test_isomorphism_search(self):
        assert find_isomorphism(chain(2), walking_arrow()) is not None
        assert not isomorphic(parallel_pair(), walking_arrow())

    def test_guard_refuses_large_search(self):
        with pytest.raises(SizeGuardError, match="exceeds guard"):
            enumerate_functors(chain(3), chain(3), EngineConfig(enumeration_guard=10))


class TestNaturalTransformations:
    def test_identity_is_only_endo_transformation(self):
        i = identity_functor(walking_arrow())
        [alpha] = enumerate_nat_trans(i, i)
        assert alpha.components == identity_nat(i).components
        assert check_natural(alpha).ok

    def test_unnatural_components(self):
        c = walking_arrow()
        functors = enumerate_functors(c, c)
        const_a = next(f for f in functors if f.object_map == {"a": "a", "b": "a"})
        const_b = next(f for f in functors if f.object_map == {"a": "b", "b": "b"})
        alpha = NatTrans(const_a, const_b, {"a": "f", "b": "f"})
        assert check_natural(alpha).ok
        wrong = NatTrans(const_b, const_a, {"a": "f", "b": "f"})
        assert not check_natural(wrong).ok


class TestEnumerateCategories:
    def test_one_object_one_morphism(self):
        found = enumerate_categories(1, 1)
        assert [len(c.morphisms) for c in found] == [0, 1]

    def test_two_element_monoids(self):
        found = enumerate_categories(2, 2)
        assert len(found) == 5
        monoids = [c for c in found if len(c.objects) == 1 and len(c.morphisms) == 2]
        assert len(monoids) == 2
        assert all(validate_category(c).ok for c in found)

    def test_names_are_deterministic(self):
        first = [c.name for c in enumerate_categories(2, 3)]
        assert first == [c.name for c in enumerate_categories(2, 3)]
        assert all(c.name.startswith("cat") for c in enumerate_categories(2, 3))

    def test_guard_counts_visited_tables(self):
        with pytest.raises(SizeGuardError, match="composition tables on 1 objects"):
            enumerate_categories(1, 3, EngineConfig(enumeration_guard=5))

    def test_default_bounds_fit_under_the_default_guard(self):
        found = enumerate_categories(2, 5)
        assert all(validate_category(c).ok for c in found)
        assert any(len(c.objects) == 1 and len(c.morphisms) == 5 for c in found)
        assert any(len(c.objects) == 2 and len(c.morphisms) == 5 for c in found)
