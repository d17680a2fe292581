"""
Two-dimensional abstract Kleisli structures: thunked 1-cells and the 2-category
``B_theta``, descent cones, the comparison ``J``, the three characterisations of
pseudomonads of descent type and the Kleisli extension morphisms.
"""
from .comparison import (
    J2,
    check_equivalence_J_underline,
    check_rho_iso,
    cone_from_thunked,
    essential_surjectivity_witness,
    underline_J,
    underline_J_functor,
)
from .cones import (
    DescentCone,
    DescentCones,
    canonical_cone,
    canonical_cone_functor,
    check_descent_cone,
    check_isobidescent,
    cone_category,
    cones_isomorphic,
    descent_cones,
    is_cone_morphism,
)
from .klext import (
    KLExt2Cell,
    KLExt3Cell,
    KLExtMorphism,
    KleisliPresentation2,
    check_klext_2cell,
    check_klext_3cell,
    check_klext_morphism,
    lift_2cell,
    lift_3cell,
    lift_morphism,
    presentation2,
    tau2,
    unit_morphism,
    verify_gray_unit,
)
from .profile import TwoDimensionalProfile, check_theorem_2d_profile
from .structure import (
    AbsKL2,
    ThunkedOneCell,
    ThunkedTwoCategory,
    abskl2_of_pseudomonad,
    build_b_theta_2,
    check_abskl2,
    check_thunked,
    induced_pseudomonad,
    is_thunkable_twocell,
)

__all__ = [
    # Main classes
    "AbsKL2",
    "ThunkedOneCell",
    "ThunkedTwoCategory",
    "DescentCone",
    "DescentCones",
    "KleisliPresentation2",
    "KLExtMorphism",
    "KLExt2Cell",
    "KLExt3Cell",
    "TwoDimensionalProfile",
    # Operations
    "check_abskl2",
    "check_thunked",
    "is_thunkable_twocell",
    "build_b_theta_2",
    "induced_pseudomonad",
    "abskl2_of_pseudomonad",
    "check_descent_cone",
    "is_cone_morphism",
    "descent_cones",
    "cone_category",
    "canonical_cone",
    "canonical_cone_functor",
    "check_isobidescent",
    "cones_isomorphic",
    "J2",
    "underline_J",
    "underline_J_functor",
    "cone_from_thunked",
    "essential_surjectivity_witness",
    "check_equivalence_J_underline",
    "check_rho_iso",
    "check_theorem_2d_profile",
    "presentation2",
    "tau2",
    "check_klext_morphism",
    "check_klext_2cell",
    "check_klext_3cell",
    "unit_morphism",
    "lift_morphism",
    "lift_2cell",
    "lift_3cell",
    "verify_gray_unit",
]
