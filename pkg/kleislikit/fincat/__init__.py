"""
Finite categories, functors and natural transformations.

All composition is diagrammatic: ``c.then(f, g)`` is "f, then g".
"""
from .category import FinCategory, validate_category
from .enumeration import (
    enumerate_categories,
    enumerate_endofunctors,
    enumerate_functors,
    enumerate_nat_trans,
    find_isomorphism,
    isomorphic,
    iter_functors,
)
from .factorisation import factor_bo_ff
from .functor import (
    Functor,
    NatTrans,
    check_functor,
    check_natural,
    compose_functors,
    identity_functor,
    identity_nat,
    inverse_functor,
    is_bijective_on_objects,
    is_equivalence,
    is_essentially_surjective,
    is_faithful,
    is_full,
    is_fully_faithful,
    is_isomorphism,
    nat_then,
    postwhisker,
    prewhisker,
)
from .naming import identity_id, named_cache, tag
from .standard import (
    chain,
    empty_cat,
    parallel_pair,
    poset_category,
    span_to_terminal,
    terminal_cat,
    walking_arrow,
)

__all__ = [
    # Main classes
    "FinCategory",
    "Functor",
    "NatTrans",
    # Operations
    "validate_category",
    "check_functor",
    "check_natural",
    "enumerate_functors",
    "enumerate_endofunctors",
    "enumerate_nat_trans",
    "enumerate_categories",
    "find_isomorphism",
    "isomorphic",
    "iter_functors",
    "factor_bo_ff",
    "identity_functor",
    "compose_functors",
    "inverse_functor",
    "identity_nat",
    "nat_then",
    "postwhisker",
    "prewhisker",
    "is_faithful",
    "is_full",
    "is_fully_faithful",
    "is_bijective_on_objects",
    "is_isomorphism",
    "is_essentially_surjective",
    "is_equivalence",
    # Naming
    "named_cache",
    "tag",
    "identity_id",
    # Standard categories
    "empty_cat",
    "terminal_cat",
    "walking_arrow",
    "parallel_pair",
    "span_to_terminal",
    "poset_category",
    "chain",
]
