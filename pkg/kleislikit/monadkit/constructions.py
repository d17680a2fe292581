import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError
from ..fincat import (
    FinCategory,
    Functor,
    NatTrans,
    identity_functor,
    is_fully_faithful,
    named_cache,
    tag,
)
from .monad import Adjunction, Comonad, Monad, induced_comonad

logger = logging.getLogger(__name__)


def kleisli_id(f: str, y: str) -> str:
    """Id of the Kleisli morphism ``X -> Y`` carried by ``f: X -> TY``."""
    return tag("kl", f, y)


def algebra_id(x: str, a: str) -> str:
    return tag("alg", x, a)


def coalgebra_id(x: str, s: str) -> str:
    return tag("coalg", x, s)


def structure_map_id(f: str, source: str, target: str) -> str:
    return tag("hom", f, source, target)


@named_cache(maxsize=256)
def kleisli(m: Monad) -> Tuple[FinCategory, Adjunction]:
    """
    The Kleisli category of ``m`` and its adjunction ``F_T -| U_T``.

    Morphisms ``X -> Y`` are morphisms ``f: X -> TY`` of the base, tagged with
    ``Y``; the composite of ``f`` then ``g: Y -> TZ`` is ``f ; Tg ; mu_Z``.

    Args:
        m: A valid monad.

    Returns:
        (FinCategory, Adjunction): The Kleisli category and ``F_T -| U_T``.
    """
    b, t = m.base, m.endo
    morphisms: Dict[str, Tuple[str, str]] = {}
    underlying: Dict[str, str] = {}
    for x in b.objects:
        for y in b.objects:
            for f in b.hom(x, t.obj(y)):
                k = kleisli_id(f, y)
                morphisms[k] = (x, y)
                underlying[k] = f
    identities = {x: kleisli_id(m.unit[x], x) for x in b.objects}

    def compose(k1: str, k2: str) -> str:
        z = morphisms[k2][1]
        return kleisli_id(b.then(underlying[k1], t.mor(underlying[k2]), m.mult[z]), z)

    kl = FinCategory.build(b.objects, morphisms, identities, compose,
                           name=f"Kl({m.name})" if m.name else "Kl")

    left = Functor(
        b, kl, {x: x for x in b.objects},
        {f: kleisli_id(b.then(f, m.unit[y]), y) for f, (_, y) in b.morphisms.items()},
        name="F_T",
    )
    right = Functor(
        kl, b, {x: t.obj(x) for x in b.objects},
        {k: b.then(t.mor(underlying[k]), m.mult[morphisms[k][1]]) for k in morphisms},
        name="U_T",
    )
    unit = NatTrans(identity_functor(b),
                    left.then(right), dict(m.unit.components))
    counit = NatTrans(
        right.then(left), identity_functor(kl),
        {x: kleisli_id(b.identity(t.obj(x)), x) for x in b.objects},
    )
    logger.info("Kleisli category: %d objects, %d morphisms", len(kl.objects), len(kl.morphisms))
    return kl, Adjunction(left, right, unit, counit)


@named_cache(maxsize=256)
def eilenberg_moore(m: Monad,
                    config: Optional[EngineConfig] = None) -> Tuple[FinCategory, Adjunction]:
    """
    The category of algebras of ``m`` and its adjunction ``F^T -| U^T``.

    Algebras ``(X, a: TX -> X)`` are found by exhaustive search over candidate
    structure maps; objects are identified by the pair ``(X, a)``.

    Raises:
        SizeGuardError: If the number of candidate structure maps exceeds the guard.
    """
    cfg = resolve(config)
    b, t = m.base, m.endo
    cfg.check_guard(sum(len(b.hom(t.obj(x), x)) for x in b.objects), "algebra structure maps")

    algebras: List[Tuple[str, str, str]] = []
    for x in b.objects:
        for a in b.hom(t.obj(x), x):
            if b.then(m.unit[x], a) != b.identity(x):
                continue
            if b.then(t.mor(a), a) != b.then(m.mult[x], a):
                continue
            algebras.append((algebra_id(x, a), x, a))
    carriers = {alg: (x, a) for alg, x, a in algebras}

    morphisms: Dict[str, Tuple[str, str]] = {}
    underlying: Dict[str, str] = {}
    for source, (x, a) in carriers.items():
        for target, (y, c) in carriers.items():
            for f in b.hom(x, y):
                if b.then(a, f) == b.then(t.mor(f), c):
                    h = structure_map_id(f, source, target)
                    morphisms[h] = (source, target)
                    underlying[h] = f
    identities = {alg: structure_map_id(b.identity(x), alg, alg)
                  for alg, (x, _) in carriers.items()}

    def compose(h1: str, h2: str) -> str:
        return structure_map_id(b.then(underlying[h1], underlying[h2]),
                                morphisms[h1][0], morphisms[h2][1])

    em = FinCategory.build(carriers, morphisms, identities, compose,
                           name=f"EM({m.name})" if m.name else "EM")

    def free(x: str) -> str:
        return algebra_id(t.obj(x), m.mult[x])

    left = Functor(
        b, em, {x: free(x) for x in b.objects},
        {f: structure_map_id(t.mor(f), free(s), free(d)) for f, (s, d) in b.morphisms.items()},
        name="F^T",
    )
    right = Functor(em, b, {alg: x for alg, (x, _) in carriers.items()}, underlying, name="U^T")
    unit = NatTrans(identity_functor(b),
                    left.then(right), dict(m.unit.components))
    counit = NatTrans(
        right.then(left),
        identity_functor(em),
        {alg: structure_map_id(a, free(x), alg) for alg, (x, a) in carriers.items()},
    )
    logger.info("Eilenberg-Moore category: %d algebras, %d maps",
                len(em.objects), len(em.morphisms))
    return em, Adjunction(left, right, unit, counit)


@named_cache(maxsize=256)
def coalgebras(q: Comonad, config: Optional[EngineConfig] = None) -> Tuple[FinCategory, Adjunction]:
    """
    The category of coalgebras of ``q`` with the adjunction ``U^Q -| F^Q``.

    The forgetful functor is the left adjoint; the cofree functor sends ``X``
    to ``(QX, delta_X)``.
    """
    cfg = resolve(config)
    b, e = q.base, q.endo
    cfg.check_guard(sum(len(b.hom(x, e.obj(x))) for x in b.objects), "coalgebra structure maps")

    carriers: Dict[str, Tuple[str, str]] = {}
    for x in b.objects:
        for s in b.hom(x, e.obj(x)):
            if b.then(s, q.counit[x]) != b.identity(x):
                continue
            if b.then(s, q.comult[x]) != b.then(s, e.mor(s)):
                continue
            carriers[coalgebra_id(x, s)] = (x, s)

    morphisms: Dict[str, Tuple[str, str]] = {}
    underlying: Dict[str, str] = {}
    for source, (x, s) in carriers.items():
        for target, (y, r) in carriers.items():
            for f in b.hom(x, y):
                if b.then(s, e.mor(f)) == b.then(f, r):
                    h = structure_map_id(f, source, target)
                    morphisms[h] = (source, target)
                    underlying[h] = f
    identities = {c: structure_map_id(b.identity(x), c, c) for c, (x, _) in carriers.items()}

    def compose(h1: str, h2: str) -> str:
        return structure_map_id(b.then(underlying[h1], underlying[h2]),
                                morphisms[h1][0], morphisms[h2][1])

    co = FinCategory.build(carriers, morphisms, identities, compose,
                           name=f"CoAlg({q.name})" if q.name else "CoAlg")

    def cofree(x: str) -> str:
        return coalgebra_id(e.obj(x), q.comult[x])

    forgetful = Functor(co, b, {c: x for c, (x, _) in carriers.items()}, underlying, name="U^Q")
    cofree_functor = Functor(
        b, co, {x: cofree(x) for x in b.objects},
        {f: structure_map_id(e.mor(f), cofree(s), cofree(d)) for f, (s, d) in b.morphisms.items()},
        name="F^Q",
    )
    unit = NatTrans(
        identity_functor(co),
        forgetful.then(cofree_functor),
        {c: structure_map_id(s, c, cofree(x)) for c, (x, s) in carriers.items()},
    )
    counit = NatTrans(
        cofree_functor.then(forgetful),
        identity_functor(b),
        dict(q.counit.components),
    )
    logger.info("coalgebra category: %d coalgebras, %d maps", len(co.objects), len(co.morphisms))
    return co, Adjunction(forgetful, cofree_functor, unit, counit)


def comparison_functor(a: Adjunction, config: Optional[EngineConfig] = None) -> Functor:
    """
    The canonical functor from the domain of the left adjoint into coalgebras
    of the induced comonad: ``X -> (LX, L eta_X)``.
    """
    q = induced_comonad(a)
    co, _ = coalgebras(q, config)
    left = a.left

    def k(x: str) -> str:
        return coalgebra_id(left.obj(x), left.mor(a.unit[x]))

    b = left.source
    return Functor(
        b, co, {x: k(x) for x in b.objects},
        {f: structure_map_id(left.mor(f), k(s), k(d)) for f, (s, d) in b.morphisms.items()},
        name="K",
    )


def comparison_fully_faithful(a: Adjunction, config: Optional[EngineConfig] = None) -> bool:
    return is_fully_faithful(comparison_functor(a, config))


@dataclass(frozen=True)
class KleisliPresentation:
    """
    A monad together with a realisation of its Kleisli category.

    ``left`` is a bijective-on-objects functor ``monad.base -> category``;
    ``structure`` is set when the presentation is the image of an abstract
    Kleisli structure.
    """
    monad: Monad
    category: FinCategory
    left: Functor
    structure: Any = None

    def __post_init__(self):
        if self.left.source != self.monad.base or self.left.target != self.category:
            raise StructuralError("left adjoint does not match the monad and category")


def presentation(m: Monad) -> KleisliPresentation:
    kl, adj = kleisli(m)
    return KleisliPresentation(m, kl, adj.left)
