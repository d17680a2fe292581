"""
One-dimensional abstract Kleisli structures: thunkability, the thunkable
subcategory, co-morphisms of monads, the codescent characterisation and the
reflection of monads into abstract Kleisli structures.
"""
from .morphisms import (
    CoMorphism,
    TightTwoCell,
    check_comorphism,
    check_tight_two_cell,
    comorphism_compose,
    identity_comorphism,
)
from .profile import CodescentProfile, check_codescent_profile
from .reflection import (
    Reflection,
    check_preserves_thunkability,
    factor_through_unit,
    factor_tight_two_cell,
    reflect,
)
from .structure import (
    AbsKL1,
    ThetaStructure,
    build_b_theta,
    check_abskl1,
    kleisli_abskl,
    tau,
    thunkable,
)

__all__ = [
    # Main classes
    "AbsKL1",
    "CoMorphism",
    "TightTwoCell",
    "CodescentProfile",
    "ThetaStructure",
    "Reflection",
    # Operations
    "check_abskl1",
    "thunkable",
    "build_b_theta",
    "kleisli_abskl",
    "tau",
    "check_comorphism",
    "check_tight_two_cell",
    "comorphism_compose",
    "identity_comorphism",
    "check_codescent_profile",
    "reflect",
    "factor_through_unit",
    "factor_tight_two_cell",
    "check_preserves_thunkability",
]
