import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import SizeGuardError, TheoremDisagreementError
from ..fincat import (
    enumerate_endofunctors,
    enumerate_nat_trans,
    identity_functor,
    is_faithful,
    is_isomorphism,
)
from ..monadkit import Monad, comparison_fully_faithful, eilenberg_moore, kleisli
from .reflection import reflect
from .structure import kleisli_abskl, thunkable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CodescentProfile:
    """The truth values of the five equivalent characterisations, in order."""
    conditions: Tuple[bool, ...]

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) <= 1

    def to_dict(self) -> Dict[str, Any]:
        return {"conditions": list(self.conditions), "agree": self.agree}

    def raise_on_disagreement(self) -> None:
        if not self.agree:
            raise TheoremDisagreementError(
                f"codescent conditions disagree: {list(self.conditions)}", profile=self
            )


def unit_is_isomorphism(m: Monad, config: Optional[EngineConfig] = None) -> bool:
    """J is an isomorphism strictly commuting with the monad data."""
    r = reflect(m)
    j = r.unit.f
    if not is_isomorphism(j):
        return False
    theta_monad = r.monad
    if m.endo.then(j) != j.then(theta_monad.endo):
        return False
    return all(
        j.mor(m.unit[x]) == theta_monad.unit[j.obj(x)]
        and j.mor(m.mult[x]) == theta_monad.mult[j.obj(x)]
        for x in m.base.objects
    )


def unit_is_equaliser(m: Monad, config: Optional[EngineConfig] = None) -> bool:
    """
    Whether eta is the equaliser of T.eta and eta.T in the functor category:
    every phi: F => T equalising them factors uniquely through eta.
    """
    cfg = resolve(config)
    b, t = m.base, m.endo
    ident = identity_functor(b)
    for f in enumerate_endofunctors(b, cfg):
        through_unit = None
        for phi in enumerate_nat_trans(f, t, cfg):
            if not all(
                b.then(phi[x], t.mor(m.unit[x])) == b.then(phi[x], m.unit[t.obj(x)])
                for x in b.objects
            ):
                continue
            if through_unit is None:
                through_unit = enumerate_nat_trans(f, ident, cfg)
            factors = [
                psi for psi in through_unit
                if all(b.then(psi[x], m.unit[x]) == phi[x] for x in b.objects)
            ]
            if len(factors) != 1:
                return False
    return True


def left_adjoint_full_on_thunkables(m: Monad, config: Optional[EngineConfig] = None) -> bool:
    """F_T faithful, and every thunkable Kleisli morphism in its image; by hom counting."""
    kl, adjunction = kleisli(m)
    left = adjunction.left
    if not is_faithful(left):
        return False
    s = kleisli_abskl(m)
    for x in m.base.objects:
        for y in m.base.objects:
            images = {left.mor(f) for f in m.base.hom(x, y)}
            thunkables = {k for k in kl.hom(x, y) if thunkable(s, k)}
            if not thunkables <= images:
                return False
    return True


def em_comparison_fully_faithful(m: Monad, config: Optional[EngineConfig] = None) -> bool:
    _, adjunction = eilenberg_moore(m, resolve(config))
    return comparison_fully_faithful(adjunction, resolve(config))


def kleisli_comparison_fully_faithful(m: Monad, config: Optional[EngineConfig] = None) -> bool:
    _, adjunction = kleisli(m)
    return comparison_fully_faithful(adjunction, resolve(config))


CONDITIONS: Tuple[Callable[[Monad, Optional[EngineConfig]], bool], ...] = (
    unit_is_isomorphism,
    unit_is_equaliser,
    left_adjoint_full_on_thunkables,
    em_comparison_fully_faithful,
    kleisli_comparison_fully_faithful,
)


def check_codescent_profile(m: Monad, config: Optional[EngineConfig] = None) -> CodescentProfile:
    """
    Evaluate the five characterisations of monads of codescent type independently.

    Args:
        m: A valid monad.
        config: Engine configuration for the enumerations.

    Returns:
        CodescentProfile: The five booleans; ``agree`` is False only on an engine defect.

    Raises:
        SizeGuardError: Naming the condition whose search space overflowed.
    """
    cfg = resolve(config)
    values = []
    for number, condition in enumerate(CONDITIONS, start=1):
        try:
            values.append(bool(condition(m, cfg)))
        except SizeGuardError as e:
            raise SizeGuardError(
                f"condition ({number}): {e.message}",
                search_space=e.search_space,
                bound=e.bound,
                context=f"condition {number}: {e.context}",
            )
    profile = CodescentProfile(tuple(values))
    if not profile.agree:
        logger.error("codescent profile of %s disagrees: %s", m.name, values)
    return profile
