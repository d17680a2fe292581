import pytest

from kleislikit.exceptions import LawViolationError, StructuralError
from kleislikit.fincat import span_to_terminal, terminal_cat, walking_arrow
from kleislikit.monadkit import const_terminal_monad, identity_comonad, identity_monad
from kleislikit.pseudomonadkit import (
    FIXTURES,
    Pseudomonad,
    check_pseudocomonad,
    check_pseudomonad,
    free_left_adjoint,
    free_psalg_2category,
    free_psalg_hom,
    identity_pseudocomonad,
    identity_pseudomonad,
    induced_pseudocomonad,
    inverse_family,
    monad_bindings,
    scalar_twist,
    strict_pseudocomonad,
    strict_pseudomonad,
    twist,
)
from kleislikit.twocat import (
    check_twofunctor,
    identity_pseudonat,
    identity_twofunctor,
    locally_discrete,
    scalar_cell,
    scalar_extension,
    validate_2category,
)


class TestPseudomonads:
    def test_fixture_library(self):
        names = FIXTURES.names()
        for k in range(1, 6):
            assert f"coherence_{k}" in names
            assert f"cocoherence_{k}" in names

    def test_identity_pseudomonad(self):
        pm = identity_pseudomonad(scalar_extension(walking_arrow(), 2))
        assert check_pseudomonad(pm).ok
        assert pm.T("a") == "a"

    def test_strict_pseudomonad_of_const(self):
        pm = strict_pseudomonad(const_terminal_monad(span_to_terminal()), 2)
        assert check_pseudomonad(pm).ok
        assert pm.base.name == "span_to_terminalxZ2"

    def test_bindings_cover_the_coherences(self):
        pm = strict_pseudomonad(identity_monad(walking_arrow()))
        bindings = monad_bindings(pm, "a")
        assert bindings["mu_X"] == "id_a"
        assert bindings["lambda_X"] == scalar_cell("id_a", 0)

    def test_bad_unitor_is_rejected(self):
        c = scalar_extension(terminal_cat(), 2)
        t = identity_twofunctor(c)
        ident = identity_pseudonat(t)
        ids = {"*": scalar_cell("id_*", 0)}
        bad = {"*": scalar_cell("id_*", 1)}
        with pytest.raises(LawViolationError):
            Pseudomonad.assemble(t, ident, ident, bad, ids, ids)
        unchecked = Pseudomonad.assemble(t, ident, ident, bad, ids, ids, validate=False)
        laws = {v["law"] for v in check_pseudomonad(unchecked).violations}
        assert "coherence_4" in laws

    def test_pseudocomonads(self):
        assert check_pseudocomonad(identity_pseudocomonad(locally_discrete(walking_arrow()))).ok
        assert check_pseudocomonad(strict_pseudocomonad(identity_comonad(walking_arrow()), 2)).ok


class TestTwist:
    @pytest.fixture
    def strict(self):
        return strict_pseudomonad(identity_monad(span_to_terminal()), 2)

    def test_scalar_twist_changes_the_multiplication(self, strict):
        twisted = scalar_twist(strict, {"x": 1})
        assert check_pseudomonad(twisted).ok
        assert twisted != strict
        assert twisted.mu.components == strict.mu.components
        assert twisted.mu.cell("!x") == scalar_cell("!x", 1)

    def test_twist_then_inverse(self, strict):
        w = {x: scalar_cell(strict.mu[x], 1 if x == "x" else 0) for x in strict.base.objects}
        twisted = twist(strict, w)
        assert twist(twisted, inverse_family(strict, w)) == strict

    def test_twist_needs_every_component(self, strict):
        with pytest.raises(StructuralError, match="no component"):
            twist(strict, {"x": scalar_cell("id_x", 1)})

    def test_twist_component_type(self, strict):
        w = {x: scalar_cell("!x", 0) for x in strict.base.objects}
        with pytest.raises(StructuralError, match="not an endo-2-cell"):
            twist(strict, w)


class TestFreePseudoalgebras:
    def test_identity_on_terminal(self):
        pm = identity_pseudomonad(locally_discrete(terminal_cat()))
        fp = free_psalg_2category(pm)
        assert len(fp.morphisms) == 1
        assert validate_2category(fp.category).ok
        assert check_twofunctor(free_left_adjoint(pm)).ok

    def test_scalar_hom_category(self):
        pm = identity_pseudomonad(scalar_extension(terminal_cat(), 2))
        hom = free_psalg_hom(pm, "*", "*")
        assert len(hom.objects) == 1
        assert len(hom.morphisms) == 2

    def test_induced_pseudocomonad(self):
        pm = strict_pseudomonad(identity_monad(walking_arrow()))
        assert check_pseudocomonad(induced_pseudocomonad(pm)).ok

    def test_unknown_pseudomorphism(self):
        fp = free_psalg_2category(identity_pseudomonad(locally_discrete(terminal_cat())))
        with pytest.raises(StructuralError, match="Unknown pseudomorphism"):
            fp.morphism("nope")
