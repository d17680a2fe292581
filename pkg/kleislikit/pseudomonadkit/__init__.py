"""
Pseudomonads and pseudocomonads on finite strict 2-categories, free
pseudoalgebras with their pseudomorphisms, and the twist construction.
"""

from .psalg import (
    FreePseudoalgebras,
    PseudoMorphism,
    check_psalg_twocell,
    check_pseudomorphism,
    free_left_adjoint,
    free_psalg_2category,
    free_psalg_hom,
    induced_pseudocomonad,
    psalg_cell_id,
    pseudomorphism_id,
)
from .pseudomonad import (
    FIXTURES,
    Pseudocomonad,
    Pseudomonad,
    check_pseudocomonad,
    check_pseudomonad,
    comonad_bindings,
    identity_pseudocomonad,
    identity_pseudomonad,
    monad_bindings,
    strict_pseudocomonad,
    strict_pseudomonad,
)
from .twist import inverse_family, scalar_twist, twist

__all__ = [
    # Main classes
    "Pseudomonad",
    "Pseudocomonad",
    "PseudoMorphism",
    "FreePseudoalgebras",
    "FIXTURES",
    # Operations
    "check_pseudomonad",
    "check_pseudocomonad",
    "monad_bindings",
    "comonad_bindings",
    "identity_pseudomonad",
    "identity_pseudocomonad",
    "strict_pseudomonad",
    "strict_pseudocomonad",
    "check_pseudomorphism",
    "check_psalg_twocell",
    "free_psalg_2category",
    "free_psalg_hom",
    "free_left_adjoint",
    "induced_pseudocomonad",
    "pseudomorphism_id",
    "psalg_cell_id",
    "twist",
    "inverse_family",
    "scalar_twist",
]
