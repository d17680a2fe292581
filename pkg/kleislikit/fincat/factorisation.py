import logging
from typing import Dict, Tuple

from .category import FinCategory
from .functor import Functor
from .naming import tag

logger = logging.getLogger(__name__)


def factor_bo_ff(f: Functor) -> Tuple[Functor, Functor]:
    """
    Factor a functor as bijective-on-objects followed by fully faithful.

    The intermediate category has the objects of the source and hom-sets
    ``M(X, Y) = D(FX, FY)``. When ``f`` is injective on objects the morphism ids
    of the target are reused, so the identity functor factors as
    ``(identity, identity)``; otherwise morphisms are tagged with their endpoints.

    Args:
        f: The functor to factor.

    Returns:
        (Functor, Functor): ``(theta_prime, k)`` with ``f == theta_prime.then(k)``.
    """
    c, d = f.source, f.target
    injective = len({f.obj(x) for x in c.objects}) == len(c.objects)

    morphisms: Dict[str, Tuple[str, str]] = {}
    underlying: Dict[str, str] = {}
    lookup: Dict[Tuple[str, str, str], str] = {}
    for x in c.objects:
        for y in c.objects:
            for h in d.hom(f.obj(x), f.obj(y)):
                mid = h if injective else tag("ff", x, h, y)
                morphisms[mid] = (x, y)
                underlying[mid] = h
                lookup[(x, h, y)] = mid
    identities = {x: lookup[(x, d.identity(f.obj(x)), x)] for x in c.objects}

    def compose(a: str, b: str) -> str:
        x, y = morphisms[a]
        _, z = morphisms[b]
        return lookup[(x, d.then(underlying[a], underlying[b]), z)]

    middle = FinCategory.build(c.objects, morphisms, identities, compose,
                               name=f"im({f.name})" if f.name else "image")
    theta_prime = Functor(
        c, middle,
        {x: x for x in c.objects},
        {m: lookup[(c.src(m), f.mor(m), c.tgt(m))] for m in c.morphisms},
        name="bo",
    )
    k = Functor(middle, d, {x: f.obj(x) for x in c.objects}, underlying, name="ff")
    logger.debug("bo/ff factorisation through %d morphisms", len(morphisms))
    return theta_prime, k
