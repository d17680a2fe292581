import itertools
import logging
from typing import Dict, List, Mapping, Optional

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError
from ..fincat import (
    FinCategory,
    Functor,
    NatTrans,
    enumerate_endofunctors,
    enumerate_nat_trans,
    identity_functor,
)
from .monad import Monad, check_monad

logger = logging.getLogger(__name__)


def _unique(c: FinCategory, x: str, y: str) -> str:
    homs = c.hom(x, y)
    if len(homs) != 1:
        raise StructuralError(f"expected exactly one morphism {x} -> {y}, found {len(homs)}")
    return homs[0]


def const_terminal_monad(c: FinCategory, terminal: str = "1") -> Monad:
    """The monad sending everything to a terminal object."""
    t = Functor(
        c, c, {x: terminal for x in c.objects},
        {f: c.identity(terminal) for f in c.morphisms}, name="const",
    )
    unit = NatTrans(identity_functor(c), t, {x: _unique(c, x, terminal) for x in c.objects})
    mult = NatTrans(t.then(t), t, {x: c.identity(terminal) for x in c.objects})
    return Monad(t, unit, mult, name=f"const_{terminal}({c.name})")


def is_closure_operator(c: FinCategory, closure: Mapping[str, str]) -> bool:
    """Monotone, inflationary and idempotent on a thin category."""
    for x in c.objects:
        if not c.hom(x, closure[x]) or closure[closure[x]] != closure[x]:
            return False
    return all(c.hom(closure[s], closure[t]) for s, t in c.morphisms.values())


def poset_closure(c: FinCategory, closure: Mapping[str, str], name: str = "") -> Monad:
    """
    The idempotent monad of a closure operator on a poset category.

    Raises:
        StructuralError: If ``closure`` is not a closure operator.
    """
    if not is_closure_operator(c, closure):
        raise StructuralError("map is not a closure operator")
    t = Functor(
        c, c, dict(closure),
        {f: _unique(c, closure[s], closure[d]) for f, (s, d) in c.morphisms.items()},
        name="closure",
    )
    unit = NatTrans(identity_functor(c), t, {x: _unique(c, x, closure[x]) for x in c.objects})
    mult = NatTrans(t.then(t), t, {x: c.identity(closure[x]) for x in c.objects})
    return Monad(t, unit, mult, name=name or f"closure({c.name})")


def closure_operators(c: FinCategory) -> List[Dict[str, str]]:
    result = []
    for images in itertools.product(c.objects, repeat=len(c.objects)):
        closure = dict(zip(c.objects, images))
        if is_closure_operator(c, closure):
            result.append(closure)
    return result


def enumerate_monads(c: FinCategory, config: Optional[EngineConfig] = None) -> List[Monad]:
    """
    Every monad on ``c``: endofunctor, unit and multiplication triples filtered by the laws.

    The search visits endofunctors, then units, then multiplications, each in
    deterministic order.
    """
    cfg = resolve(config)
    ident = identity_functor(c)
    result: List[Monad] = []
    for t in enumerate_endofunctors(c, cfg):
        units = enumerate_nat_trans(ident, t, cfg)
        if not units:
            continue
        mults = enumerate_nat_trans(t.then(t), t, cfg)
        for unit in units:
            for mult in mults:
                candidate = Monad(t, unit, mult, validate=False)
                if check_monad(candidate).ok:
                    candidate.name = f"monad{len(result)}({c.name})"
                    result.append(candidate)
    logger.info("enumerated %d monads on %s", len(result), c.name)
    return result
