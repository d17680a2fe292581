"""
Monads and comonads on finite categories, with the Kleisli, Eilenberg-Moore
and coalgebra constructions.
"""
from .constructions import (
    KleisliPresentation,
    algebra_id,
    coalgebra_id,
    coalgebras,
    comparison_fully_faithful,
    comparison_functor,
    eilenberg_moore,
    kleisli,
    kleisli_id,
    presentation,
    structure_map_id,
)
from .examples import (
    closure_operators,
    const_terminal_monad,
    enumerate_monads,
    is_closure_operator,
    poset_closure,
)
from .monad import (
    Adjunction,
    Comonad,
    Monad,
    check_adjunction,
    check_comonad,
    check_monad,
    identity_comonad,
    identity_monad,
    induced_comonad,
    induced_monad,
)

__all__ = [
    # Main classes
    "Monad",
    "Comonad",
    "Adjunction",
    "KleisliPresentation",
    # Operations
    "check_monad",
    "check_comonad",
    "check_adjunction",
    "induced_monad",
    "induced_comonad",
    "kleisli",
    "eilenberg_moore",
    "coalgebras",
    "comparison_functor",
    "comparison_fully_faithful",
    "presentation",
    "kleisli_id",
    "algebra_id",
    "coalgebra_id",
    "structure_map_id",
    # Instances
    "identity_monad",
    "identity_comonad",
    "const_terminal_monad",
    "poset_closure",
    "closure_operators",
    "is_closure_operator",
    "enumerate_monads",
]
