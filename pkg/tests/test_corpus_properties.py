import pytest

from kleislikit.abskl1 import build_b_theta, check_codescent_profile
from kleislikit.abskl2 import (
    J2,
    abskl2_of_pseudomonad,
    build_b_theta_2,
    check_equivalence_J_underline,
    check_rho_iso,
    check_theorem_2d_profile,
    verify_gray_unit,
)
from kleislikit.cli import generate_corpus
from kleislikit.config import CorpusConfig
from kleislikit.monadkit import induced_comonad
from kleislikit.twocat import check_twofunctor

BOUNDED = CorpusConfig(max_objects=1, max_morphisms=2, poset_max_size=2, twist_order=2)


@pytest.fixture(scope="module")
def corpus():
    return {i.name: i for i in generate_corpus(BOUNDED)}


@pytest.fixture(scope="module")
def monads(corpus):
    return {name[len("monad:"):]: i.value() for name, i in corpus.items() if i.kind == "monad"}


def in_bounds(pm):
    base = pm.base
    return len(base.objects) <= 2 and len(base.onecells) <= 6 and len(base.twocells) <= 20


@pytest.fixture(scope="module")
def locally_discrete(corpus):
    found = {}
    for name, i in corpus.items():
        if name.startswith("pseudomonad:ld(") and i.kind == "pseudomonad":
            pm = i.value()
            if in_bounds(pm):
                found[name[len("pseudomonad:ld("):-1]] = pm
    return found


@pytest.fixture(scope="module")
def twisted(corpus):
    found = {}
    for name, i in corpus.items():
        if name.startswith("pseudomonad:twist("):
            pm = i.value()
            if in_bounds(pm):
                found[name] = pm
    return found


class TestOneDimensional:
    def test_five_conditions_agree(self, monads):
        profiles = {name: check_codescent_profile(m) for name, m in monads.items()}
        assert all(p.agree for p in profiles.values())
        assert profiles["identity(terminal)"].conditions == (True,) * 5
        assert profiles["const_terminal(span_to_terminal)"].conditions == (False,) * 5

    def test_thunkable_adjunction_induces_the_comonad(self, corpus):
        structures = [i.value() for i in corpus.values() if i.kind == "abskl1"]
        assert structures
        for s in structures:
            assert induced_comonad(build_b_theta(s).adjunction) == s.comonad


class TestTwoDimensional:
    def test_locally_discrete_lifts_match_the_monad(self, monads, locally_discrete):
        assert "identity(walking_arrow)" in locally_discrete
        for name, pm in locally_discrete.items():
            profile = check_theorem_2d_profile(pm)
            assert profile.agree
            expected = check_codescent_profile(monads[name]).conditions[1]
            assert profile.conditions == (expected,) * 3

    def test_comparison_on_locally_discrete_lifts(self, locally_discrete):
        for pm in locally_discrete.values():
            assert check_twofunctor(J2(pm)).ok
            for x in pm.base.objects:
                for y in pm.base.objects:
                    assert check_equivalence_J_underline(pm, x, y)
                    assert check_rho_iso(pm, x, y)


class TestTwistedInstances:
    def test_twists_are_generated(self, twisted):
        assert "pseudomonad:twist(identity(terminal))" in twisted
        assert "pseudomonad:twist(identity(walking_arrow))" in twisted

    def test_three_conditions_agree(self, twisted):
        for pm in twisted.values():
            assert check_theorem_2d_profile(pm).agree

    def test_constructed_cells_pass_their_validators(self, twisted):
        for pm in twisted.values():
            s = abskl2_of_pseudomonad(pm)
            assert build_b_theta_2(s).induced_pseudocomonad() == s.comonad
            assert check_twofunctor(J2(pm)).ok
            for x in pm.base.objects:
                for y in pm.base.objects:
                    assert check_equivalence_J_underline(pm, x, y)
                    assert check_rho_iso(pm, x, y)

    def test_gray_unit(self, twisted):
        for pm in twisted.values():
            assert verify_gray_unit(pm, abskl2_of_pseudomonad(pm))
