import logging
from typing import NamedTuple, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import FactorisationError, StructuralError
from ..fincat import Functor, NatTrans, identity_functor, iter_functors
from ..monadkit import Monad, kleisli, presentation
from .morphisms import CoMorphism, TightTwoCell
from .structure import AbsKL1, build_b_theta, kleisli_abskl, tau, thunkable

logger = logging.getLogger(__name__)


class Reflection(NamedTuple):
    structure: AbsKL1
    monad: Monad
    unit: CoMorphism


def reflect(m: Monad) -> Reflection:
    """
    The reflection of a monad into abstract Kleisli structures.

    Returns the Kleisli structure of ``m``, the monad it induces on its
    thunkable subcategory and the unit co-morphism ``(J, 1)``, where ``J``
    sends ``f`` to ``F_T f`` (always thunkable).
    """
    s = kleisli_abskl(m)
    bt = build_b_theta(s)
    kl, adjunction = kleisli(m)
    left = adjunction.left
    j = Functor(m.base, bt.category, {x: x for x in m.base.objects},
                dict(left.morphism_map), name="J")
    unit = CoMorphism(presentation(m), tau(s), j, identity_functor(kl))
    return Reflection(s, bt.monad, unit)


def _structure_of(g: CoMorphism) -> AbsKL1:
    s = g.target.structure
    if not isinstance(s, AbsKL1):
        raise StructuralError("target is not the image of an abstract Kleisli structure")
    return s


def factor_through_unit(g: CoMorphism,
                        config: Optional[EngineConfig] = None) -> Tuple[CoMorphism, bool]:
    """
    Factor a co-morphism into the image of a structure through the unit ``(J, 1)``.

    The factor keeps ``g.fbar`` and restricts it to thunkable morphisms; the
    uniqueness flag comes from an exhaustive search over functors out of the
    thunkable subcategory.

    Args:
        g: A co-morphism from the Kleisli presentation of a monad into ``tau(s)``.
        config: Guards for the uniqueness search.

    Returns:
        (CoMorphism, bool): The factor and whether it is the only one.

    Raises:
        StructuralError: If the target is not the image of a structure.
        FactorisationError: If ``g.fbar`` sends a thunkable morphism to a non-thunkable one.
    """
    cfg = resolve(config)
    target_structure = _structure_of(g)
    r = reflect(g.source.monad)
    source_theta = build_b_theta(r.structure).category
    h = g.fbar
    if h.source != r.structure.base:
        raise StructuralError("co-morphism does not start at the Kleisli presentation")

    morphism_map = {}
    for k in source_theta.morphisms:
        image = h.mor(k)
        if not thunkable(target_structure, image):
            logger.error("%s is thunkable but its image %s is not", k, image)
            raise FactorisationError(f"image of thunkable morphism {k!r} is not thunkable")
        morphism_map[k] = image
    lifted = Functor(source_theta, g.target.monad.base, dict(h.object_map), morphism_map,
                     name="G'")
    factor = CoMorphism(r.unit.target, g.target, lifted, h)

    cfg.check_uniqueness_guard(
        len(lifted.target.objects) ** len(source_theta.objects), "factorisation uniqueness"
    )
    j = r.unit.f
    inclusion_then_h = r.unit.target.left.then(h)
    matches = 0
    for candidate in iter_functors(source_theta, lifted.target, cfg):
        if j.then(candidate) == g.f and candidate.then(g.target.left) == inclusion_then_h:
            matches += 1
    return factor, matches == 1


def factor_tight_two_cell(cell: TightTwoCell,
                          config: Optional[EngineConfig] = None) -> Optional[TightTwoCell]:
    """
    Factor a tight 2-cell into the image of a structure through the unit.

    Returns None when some component of ``phibar`` (taken at every object of the
    Kleisli category) is not thunkable.
    """
    structure = _structure_of(cell.source)
    for x, component in cell.phibar.components.items():
        if not thunkable(structure, component):
            logger.info("component at %s is not thunkable; no factorisation", x)
            return None
    source, _ = factor_through_unit(cell.source, config)
    target, _ = factor_through_unit(cell.target, config)
    phi = NatTrans(source.f, target.f, dict(cell.phibar.components))
    return TightTwoCell(source, target, phi, cell.phibar)


def check_preserves_thunkability(g: CoMorphism, src: AbsKL1, tgt: AbsKL1) -> bool:
    """Whether ``g.fbar`` maps thunkable morphisms of ``src`` to thunkable morphisms of ``tgt``."""
    if g.fbar.source != src.base or g.fbar.target != tgt.base:
        raise StructuralError("structures do not sit on the co-morphism's Kleisli categories")
    return all(
        thunkable(tgt, g.fbar.mor(k)) for k in src.base.morphisms if thunkable(src, k)
    )
