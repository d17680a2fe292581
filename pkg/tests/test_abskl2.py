from unittest.mock import patch

import pytest

from kleislikit.abskl2 import (
    J2,
    AbsKL2,
    KLExt2Cell,
    KLExt3Cell,
    ThunkedOneCell,
    ThunkedTwoCategory,
    TwoDimensionalProfile,
    abskl2_of_pseudomonad,
    build_b_theta_2,
    canonical_cone,
    canonical_cone_functor,
    check_abskl2,
    check_equivalence_J_underline,
    check_isobidescent,
    check_rho_iso,
    check_theorem_2d_profile,
    check_thunked,
    cone_category,
    cone_from_thunked,
    cones_isomorphic,
    descent_cones,
    induced_pseudomonad,
    is_thunkable_twocell,
    lift_2cell,
    lift_3cell,
    lift_morphism,
    presentation2,
    tau2,
    underline_J,
    unit_morphism,
    verify_gray_unit,
)
from kleislikit.abskl2.cones import cone_id
from kleislikit.exceptions import StructuralError, TheoremDisagreementError, UnknownCellError
from kleislikit.fincat import is_equivalence, span_to_terminal, terminal_cat, walking_arrow
from kleislikit.monadkit import const_terminal_monad, identity_comonad, identity_monad
from kleislikit.pseudomonadkit import (
    check_pseudomonad,
    identity_pseudomonad,
    scalar_twist,
    strict_pseudocomonad,
    strict_pseudomonad,
)
from kleislikit.twocat import (
    check_pseudonatural,
    check_twofunctor,
    identity_modification,
    identity_pseudonat,
    locally_discrete,
    validate_2category,
)


@pytest.fixture
def trivial():
    return identity_pseudomonad(locally_discrete(terminal_cat()))


@pytest.fixture
def arrow():
    return strict_pseudomonad(identity_monad(walking_arrow()))


class TestAbsKL2:
    def test_structure_of_free_pseudoalgebras(self, arrow):
        s = abskl2_of_pseudomonad(arrow)
        assert check_abskl2(s).ok
        assert s.name == f"kl({arrow.name})"
        assert set(s.theta) == set(s.base.objects)

    def test_missing_component_is_structural(self, trivial):
        s = abskl2_of_pseudomonad(trivial)
        broken = AbsKL2(s.comonad, {}, s.u, s.m, validate=False)
        report = check_abskl2(broken)
        assert report.structural[0]["message"] == "missing coalgebra component"

    def test_equality_ignores_name(self, trivial):
        s = abskl2_of_pseudomonad(trivial)
        renamed = AbsKL2(s.comonad, s.theta, s.u, s.m, name="other", validate=False)
        assert renamed == s
        assert hash(renamed) == hash(s)

    def test_thunked_two_category(self, arrow):
        s = abskl2_of_pseudomonad(arrow)
        bt = build_b_theta_2(s)
        assert validate_2category(bt.category).ok
        assert check_twofunctor(bt.left).ok
        assert check_twofunctor(bt.right).ok
        for k, t in bt.morphisms.items():
            assert check_thunked(s, t).ok
            assert k in bt.thunked_over(t.f)

    def test_unknown_thunked_cell(self, trivial):
        bt = build_b_theta_2(abskl2_of_pseudomonad(trivial))
        with pytest.raises(UnknownCellError, match="Unknown thunked 1-cell"):
            bt.morphism("nope")

    def test_unknown_one_cell_is_reported(self, trivial):
        s = abskl2_of_pseudomonad(trivial)
        report = check_thunked(s, ThunkedOneCell("nope", "nope"))
        assert report.structural[0]["message"] == "unknown 1-cell"

    def test_thunkable_twocell_type(self, trivial):
        s = abskl2_of_pseudomonad(trivial)
        t = next(iter(build_b_theta_2(s).morphisms.values()))
        with pytest.raises(StructuralError, match="does not go from"):
            is_thunkable_twocell(s, "nope", t, t)

    def test_induced_pseudomonad(self, arrow):
        s = abskl2_of_pseudomonad(arrow)
        induced = induced_pseudomonad(s)
        assert check_pseudomonad(induced).ok
        assert induced.name == f"theta({s.name})"
        assert induced.base == build_b_theta_2(s).category

    def test_induced_pseudocomonad_is_the_structure_comonad(self, arrow):
        s = abskl2_of_pseudomonad(arrow)
        induced = build_b_theta_2(s).induced_pseudocomonad()
        assert induced == s.comonad
        assert induced.name == f"induced({s.name})"

    def test_induced_pseudocomonad_on_twisted_instance(self):
        twisted = scalar_twist(strict_pseudomonad(identity_monad(terminal_cat()), 2), {"*": 1})
        s = abskl2_of_pseudomonad(twisted)
        assert build_b_theta_2(s).induced_pseudocomonad() == s.comonad

    def test_induced_pseudocomonad_disagreement(self, trivial):
        s = abskl2_of_pseudomonad(trivial)
        uncached = AbsKL2(s.comonad, s.theta, s.u, s.m, name="uncached", validate=False)
        other = strict_pseudocomonad(identity_comonad(span_to_terminal()))
        with patch.object(ThunkedTwoCategory, "induced_pseudocomonad", return_value=other):
            with pytest.raises(TheoremDisagreementError, match="differs from the structure"):
                build_b_theta_2(uncached)


class TestDescentCones:
    def test_identity_on_terminal(self, trivial):
        cones = descent_cones(trivial, "*", "*")
        assert len(cones.cones) == 1
        category = cone_category(trivial, "*", "*")
        assert len(category.objects) == 1
        assert len(category.morphisms) == 1

    def test_canonical_cone(self, trivial):
        cone = canonical_cone(trivial, "id_*")
        assert cone_id(cone) in descent_cones(trivial, "*", "*").cones
        assert cones_isomorphic(trivial, "*", "*", cone, cone)

    def test_unknown_cone(self, trivial):
        with pytest.raises(UnknownCellError, match="Unknown descent cone"):
            descent_cones(trivial, "*", "*").cone("nope")

    def test_canonical_functor_is_equivalence(self, arrow):
        for x in arrow.base.objects:
            for y in arrow.base.objects:
                assert is_equivalence(canonical_cone_functor(arrow, x, y))
        assert check_isobidescent(arrow)


class TestComparison:
    def test_J_is_a_two_functor(self, arrow):
        j = J2(arrow)
        assert check_twofunctor(j).ok
        assert all(j.obj(x) == x for x in arrow.base.objects)

    def test_cone_round_trip(self, trivial):
        cone = canonical_cone(trivial, "id_*")
        thunked = underline_J(trivial, cone)
        rebuilt = cone_from_thunked(trivial, thunked)
        assert rebuilt.source == rebuilt.target == "*"

    def test_equivalence_and_rho(self, arrow):
        for x in arrow.base.objects:
            for y in arrow.base.objects:
                assert check_equivalence_J_underline(arrow, x, y)
                assert check_rho_iso(arrow, x, y)


class TestTwoDimensionalProfile:
    def test_identity_pseudomonad(self, trivial):
        profile = check_theorem_2d_profile(trivial)
        assert profile.conditions == (True,) * 3
        assert profile.agree

    def test_strict_const_terminal(self):
        pm = strict_pseudomonad(const_terminal_monad(span_to_terminal()))
        profile = check_theorem_2d_profile(pm)
        assert profile.conditions == (False,) * 3
        assert profile.to_dict() == {"conditions": [False] * 3, "agree": True}

    def test_twisted_identity(self):
        strict = strict_pseudomonad(identity_monad(span_to_terminal()), 2)
        twisted = scalar_twist(strict, {"x": 1})
        assert check_theorem_2d_profile(twisted).conditions == (True,) * 3

    def test_disagreement(self):
        profile = TwoDimensionalProfile((True, True, False))
        assert not profile.agree
        with pytest.raises(TheoremDisagreementError, match="disagree"):
            profile.raise_on_disagreement()


class TestKleisliExtensions:
    def test_presentations(self, trivial):
        s = abskl2_of_pseudomonad(trivial)
        assert presentation2(trivial).left.source == trivial.base
        assert tau2(s).structure == s
        assert tau2(s).category == s.base

    def test_unit_morphism_lifts_to_identity_restriction(self, trivial):
        unit = unit_morphism(trivial)
        lifted = lift_morphism(unit)
        assert J2(trivial).then(lifted.g) == unit.g
        assert lifted.gbar == unit.gbar

    def test_gray_unit(self, trivial):
        assert verify_gray_unit(trivial, abskl2_of_pseudomonad(trivial))

    def test_loose_2cell_lifts_to_itself(self, trivial):
        unit = unit_morphism(trivial)
        loose = KLExt2Cell(unit, unit, identity_pseudonat(unit.gbar))
        assert not loose.is_tight
        assert lift_2cell(loose) is loose.phibar

    def test_loose_3cell_does_not_lift(self, trivial):
        unit = unit_morphism(trivial)
        loose = KLExt2Cell(unit, unit, identity_pseudonat(unit.gbar))
        cell = KLExt3Cell(loose, loose, identity_modification(loose.phibar))
        with pytest.raises(StructuralError, match="only tight 3-cells"):
            lift_3cell(cell)

    def test_tight_identity_2cell_lifts_between_the_lifts(self, arrow):
        unit = unit_morphism(arrow)
        tight = KLExt2Cell(unit, unit, identity_pseudonat(unit.gbar), identity_pseudonat(unit.g))
        lifted_g = lift_morphism(unit, check_unique=False).g
        lifted = lift_2cell(tight)
        assert lifted.source == lifted_g
        assert lifted.target == lifted_g
        assert lifted.components == tight.phi.components
        assert check_pseudonatural(lifted).ok

    def test_tight_identity_3cell_lifts(self, arrow):
        unit = unit_morphism(arrow)
        tight = KLExt2Cell(unit, unit, identity_pseudonat(unit.gbar), identity_pseudonat(unit.g))
        cell = KLExt3Cell(tight, tight, identity_modification(tight.phibar),
                          identity_modification(tight.phi))
        lifted = lift_3cell(cell)
        assert lifted.source == lift_2cell(tight)
        assert lifted.target == lifted.source
        assert lifted.components == cell.omega.components

    def test_gray_unit_on_twisted_instance(self):
        twisted = scalar_twist(strict_pseudomonad(identity_monad(terminal_cat()), 2), {"*": 1})
        assert verify_gray_unit(twisted, abskl2_of_pseudomonad(twisted))
