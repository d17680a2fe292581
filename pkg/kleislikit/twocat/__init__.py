"""
Finite strict 2-categories, strict 2-functors, pasting evaluation,
pseudonatural transformations and modifications.
"""

from .pasting import (
    Cell2,
    FixtureLibrary,
    Id2,
    LWhisk,
    PastingExpr,
    PastingFixture,
    RWhisk,
    VComp,
    boundary,
    eval_pasting,
    fixture_holds,
    fixture_value,
    from_dict,
    instantiate,
    load_fixture,
    pastings_agree,
    reassociate,
    to_dict,
    vcomp_all,
)
from .pseudonat import (
    Modification,
    PseudoNat,
    check_modification,
    check_pseudonatural,
    enumerate_modifications,
    enumerate_pseudonats,
    identity_modification,
    identity_pseudonat,
    modification_inverse,
    modification_lwhisk,
    modification_postwhisker,
    modification_prewhisker,
    modification_rwhisk,
    modification_then,
    pseudonat_postwhisker,
    pseudonat_prewhisker,
    pseudonat_then,
)
from .twocategory import (
    Fin2Category,
    locally_discrete,
    scalar_cell,
    scalar_extension,
    scalar_order,
    validate_2category,
)
from .twofunctor import (
    TwoFunctor,
    check_twofunctor,
    enumerate_twofunctors,
    graded_functor,
    identity_twofunctor,
)

__all__ = [
    # Main classes
    "Fin2Category",
    "TwoFunctor",
    "PseudoNat",
    "Modification",
    "PastingFixture",
    "FixtureLibrary",
    # Pasting expressions
    "PastingExpr",
    "Cell2",
    "Id2",
    "VComp",
    "LWhisk",
    "RWhisk",
    "vcomp_all",
    "boundary",
    "eval_pasting",
    "pastings_agree",
    "reassociate",
    "instantiate",
    "fixture_holds",
    "fixture_value",
    "load_fixture",
    "to_dict",
    "from_dict",
    # Operations
    "validate_2category",
    "locally_discrete",
    "scalar_extension",
    "scalar_cell",
    "scalar_order",
    "check_twofunctor",
    "identity_twofunctor",
    "graded_functor",
    "enumerate_twofunctors",
    "check_pseudonatural",
    "check_modification",
    "identity_pseudonat",
    "pseudonat_then",
    "pseudonat_postwhisker",
    "pseudonat_prewhisker",
    "identity_modification",
    "modification_then",
    "modification_inverse",
    "modification_postwhisker",
    "modification_prewhisker",
    "modification_rwhisk",
    "modification_lwhisk",
    "enumerate_pseudonats",
    "enumerate_modifications",
]
