import pytest

from kleislikit.exceptions import LawViolationError, StructuralError
from kleislikit.fincat import (
    FinCategory,
    NatTrans,
    chain,
    identity_functor,
    identity_nat,
    span_to_terminal,
    terminal_cat,
    validate_category,
    walking_arrow,
)
from kleislikit.monadkit import (
    KleisliPresentation,
    Monad,
    check_adjunction,
    check_comonad,
    check_monad,
    closure_operators,
    coalgebras,
    comparison_functor,
    comparison_fully_faithful,
    const_terminal_monad,
    eilenberg_moore,
    enumerate_monads,
    identity_comonad,
    identity_monad,
    induced_comonad,
    induced_monad,
    is_closure_operator,
    kleisli,
    poset_closure,
    presentation,
)


def cyclic_two() -> FinCategory:
    """One object with an involution ``s``."""
    morphisms = {"id_*": ("*", "*"), "s": ("*", "*")}

    def compose(f, g):
        if f == "id_*":
            return g
        if g == "id_*":
            return f
        return "id_*"

    return FinCategory.build(["*"], morphisms, {"*": "id_*"}, compose, name="Z2")


class TestMonads:
    @pytest.fixture
    def span(self):
        return span_to_terminal()

    def test_identity_monad_is_valid(self, span):
        assert check_monad(identity_monad(span)).ok

    def test_const_terminal_monad(self, span):
        m = const_terminal_monad(span)
        assert check_monad(m).ok
        assert m.endo.obj("x") == "1"
        assert m.unit["y"] == "!y"

    def test_law_violation_raises(self):
        c = cyclic_two()
        assert validate_category(c).ok
        ident = identity_functor(c)
        twisted_mult = NatTrans(ident, ident, {"*": "s"})
        with pytest.raises(LawViolationError, match="right_unit"):
            Monad(ident, identity_nat(ident), twisted_mult, name="bad")

    def test_unvalidated_candidate_reports(self):
        c = cyclic_two()
        ident = identity_functor(c)
        candidate = Monad(ident, identity_nat(ident), NatTrans(ident, ident, {"*": "s"}),
                          validate=False)
        laws = {v["law"] for v in check_monad(candidate).violations}
        assert {"right_unit", "left_unit"} <= laws

    def test_wrongly_typed_unit(self, span):
        m = const_terminal_monad(span)
        report = check_monad(Monad(m.endo, m.mult, m.mult, validate=False))
        assert report.structural[0]["message"] == "unit must be 1 => T"

    def test_equality_ignores_name(self, span):
        m = identity_monad(span)
        other = identity_monad(span)
        other.name = "renamed"
        assert m == other
        assert hash(m) == hash(other)


class TestClosureMonads:
    def test_closure_operators_on_chain(self):
        operators = closure_operators(chain(2))
        assert operators == [{"0": "0", "1": "1"}, {"0": "1", "1": "1"}]

    def test_closure_monad(self):
        m = poset_closure(chain(2), {"0": "1", "1": "1"})
        assert check_monad(m).ok
        assert m.unit["0"] == "0<=1"

    def test_not_a_closure(self):
        assert not is_closure_operator(chain(2), {"0": "0", "1": "0"})
        with pytest.raises(StructuralError, match="not a closure operator"):
            poset_closure(chain(2), {"0": "0", "1": "0"})


class TestEnumerateMonads:
    def test_terminal(self):
        assert len(enumerate_monads(terminal_cat())) == 1

    def test_walking_arrow(self):
        monads = enumerate_monads(walking_arrow())
        assert len(monads) == 2
        assert [m.name for m in monads] == ["monad0(walking_arrow)", "monad1(walking_arrow)"]
        assert identity_monad(walking_arrow()) in monads


class TestConstructions:
    @pytest.fixture
    def const(self):
        return const_terminal_monad(span_to_terminal())

    def test_kleisli_of_identity(self):
        kl, adj = kleisli(identity_monad(walking_arrow()))
        assert len(kl.morphisms) == 3
        assert validate_category(kl).ok
        assert check_adjunction(adj).ok

    def test_kleisli_of_const(self, const):
        kl, adj = kleisli(const)
        assert len(kl.morphisms) == 9
        assert validate_category(kl).ok
        assert check_adjunction(adj).ok

    def test_kleisli_adjunction_induces_the_monad(self, const):
        _, adj = kleisli(const)
        assert induced_monad(adj) == const

    def test_eilenberg_moore_of_const(self, const):
        em, adj = eilenberg_moore(const)
        assert len(em.objects) == 1
        assert len(em.morphisms) == 1
        assert check_adjunction(adj).ok

    def test_eilenberg_moore_of_identity(self):
        em, _ = eilenberg_moore(identity_monad(walking_arrow()))
        assert len(em.objects) == 2
        assert len(em.morphisms) == 3

    def test_induced_comonad(self, const):
        _, adj = kleisli(const)
        assert check_comonad(induced_comonad(adj)).ok

    def test_identity_comonad(self):
        assert check_comonad(identity_comonad(walking_arrow())).ok

    def test_comparison_of_identity_adjunction(self):
        _, adj = kleisli(identity_monad(walking_arrow()))
        assert comparison_fully_faithful(adj)

    def test_coalgebras_of_identity_comonad(self):
        co, adj = coalgebras(identity_comonad(walking_arrow()))
        assert len(co.objects) == 2
        assert len(co.morphisms) == 3
        assert validate_category(co).ok
        assert check_adjunction(adj).ok

    def test_comparison_functor_endpoints(self):
        _, adj = kleisli(identity_monad(walking_arrow()))
        k = comparison_functor(adj)
        assert k.source == walking_arrow()
        assert len(k.target.objects) == 2
        assert k.name == "K"

    def test_cached_constructions_keep_their_input_name(self, const):
        first = Monad(const.endo, const.unit, const.mult, name="first")
        second = Monad(const.endo, const.unit, const.mult, name="second")
        assert first == second
        assert kleisli(first)[0].name == "Kl(first)"
        assert kleisli(second)[0].name == "Kl(second)"
        assert eilenberg_moore(first)[0].name == "EM(first)"
        assert eilenberg_moore(second)[0].name == "EM(second)"

    def test_presentation(self, const):
        p = presentation(const)
        assert p.category == kleisli(const)[0]
        assert p.structure is None

    def test_presentation_endpoints_checked(self, const):
        p = presentation(const)
        with pytest.raises(StructuralError, match="does not match"):
            KleisliPresentation(identity_monad(terminal_cat()), p.category, p.left)
