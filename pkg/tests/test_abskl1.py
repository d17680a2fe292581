import pytest

from kleislikit.abskl1 import (
    AbsKL1,
    CodescentProfile,
    TightTwoCell,
    build_b_theta,
    check_abskl1,
    check_codescent_profile,
    check_preserves_thunkability,
    comorphism_compose,
    factor_through_unit,
    factor_tight_two_cell,
    identity_comorphism,
    kleisli_abskl,
    reflect,
    tau,
    thunkable,
)
from kleislikit.config import EngineConfig
from kleislikit.exceptions import SizeGuardError, TheoremDisagreementError, UnknownCellError
from kleislikit.fincat import (
    chain,
    identity_nat,
    is_isomorphism,
    span_to_terminal,
    terminal_cat,
    walking_arrow,
)
from kleislikit.monadkit import const_terminal_monad, identity_monad, kleisli, presentation


class TestAbsKL1:
    @pytest.fixture
    def const(self):
        return const_terminal_monad(span_to_terminal())

    def test_kleisli_structure_is_valid(self, const):
        s = kleisli_abskl(const)
        assert check_abskl1(s).ok
        assert s.base == kleisli(const)[0]

    def test_every_morphism_of_identity_kleisli_is_thunkable(self):
        s = kleisli_abskl(identity_monad(walking_arrow()))
        assert all(thunkable(s, k) for k in s.base.morphisms)

    def test_thunkable_unknown_morphism(self, const):
        with pytest.raises(UnknownCellError, match="Unknown morphism"):
            thunkable(kleisli_abskl(const), "nope")

    def test_b_theta_of_const(self, const):
        bt = build_b_theta(kleisli_abskl(const))
        assert len(bt.category.morphisms) == 9
        assert bt.monad.base == bt.category

    def test_missing_theta_is_structural(self, const):
        s = kleisli_abskl(const)
        broken = AbsKL1(s.comonad, {}, validate=False)
        report = check_abskl1(broken)
        assert report.structural
        assert report.structural[0]["message"] == "missing theta component"

    def test_tau_remembers_structure(self, const):
        s = kleisli_abskl(const)
        p = tau(s)
        assert p.structure == s
        assert p.category == s.base


class TestCodescentProfile:
    @pytest.mark.parametrize("category", [terminal_cat, walking_arrow, span_to_terminal])
    def test_identity_monads_are_of_codescent_type(self, category):
        profile = check_codescent_profile(identity_monad(category()))
        assert profile.conditions == (True,) * 5
        assert profile.agree

    def test_const_terminal_is_not(self):
        profile = check_codescent_profile(const_terminal_monad(span_to_terminal()))
        assert profile.conditions == (False,) * 5
        assert profile.to_dict() == {"conditions": [False] * 5, "agree": True}

    def test_disagreement(self):
        profile = CodescentProfile((True, False, True, True, True))
        assert not profile.agree
        with pytest.raises(TheoremDisagreementError, match="disagree"):
            profile.raise_on_disagreement()

    def test_guard_names_condition(self):
        with pytest.raises(SizeGuardError, match=r"condition \(2\)"):
            check_codescent_profile(identity_monad(chain(3)), EngineConfig(enumeration_guard=2))


class TestReflection:
    @pytest.fixture
    def const(self):
        return const_terminal_monad(span_to_terminal())

    def test_unit_of_identity_monad_is_isomorphism(self):
        r = reflect(identity_monad(walking_arrow()))
        assert is_isomorphism(r.unit.f)

    def test_unit_of_const_is_not(self, const):
        r = reflect(const)
        assert not is_isomorphism(r.unit.f)
        assert r.unit.source == presentation(const)

    def test_identity_comorphism_is_neutral(self, const):
        r = reflect(const)
        composite = comorphism_compose(identity_comorphism(r.unit.source), r.unit)
        assert composite == r.unit

    def test_unit_factors_through_itself(self, const):
        r = reflect(const)
        factor, unique = factor_through_unit(r.unit)
        assert unique
        assert factor.fbar == r.unit.fbar
        assert all(factor.f.mor(k) == k for k in factor.f.source.morphisms)

    def test_uniqueness_guard(self, const):
        with pytest.raises(SizeGuardError, match="factorisation uniqueness"):
            factor_through_unit(reflect(const).unit, EngineConfig(uniqueness_guard=2))

    def test_identity_tight_two_cell_factors(self, const):
        unit = reflect(const).unit
        cell = TightTwoCell(unit, unit, identity_nat(unit.f), identity_nat(unit.fbar))
        factored = factor_tight_two_cell(cell)
        assert factored is not None
        assert factored.phibar == cell.phibar

    def test_preserves_thunkability(self, const):
        r = reflect(const)
        assert check_preserves_thunkability(r.unit, r.structure, r.structure)
