import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import SizeGuardError, TheoremDisagreementError
from ..fincat import Functor, is_equivalence
from ..pseudomonadkit import Pseudomonad, free_left_adjoint, free_psalg_2category
from .comparison import J2
from .cones import check_isobidescent
from .structure import abskl2_of_pseudomonad, build_b_theta_2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoDimensionalProfile:
    """Truth values of the three characterisations of pseudomonads of descent type."""
    conditions: Tuple[bool, ...]

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) <= 1

    def to_dict(self) -> Dict[str, Any]:
        return {"conditions": list(self.conditions), "agree": self.agree}

    def raise_on_disagreement(self) -> None:
        if not self.agree:
            raise TheoremDisagreementError(
                f"2-dimensional conditions disagree: {list(self.conditions)}", profile=self
            )


def j_is_biequivalence(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> bool:
    """Every hom-functor of J is an equivalence; J is the identity on objects."""
    c = pm.base
    j = J2(pm, config)
    d = j.target
    for x in c.objects:
        for y in c.objects:
            hom = c.hom_category(x, y)
            functor = Functor(
                hom,
                d.hom_category(x, y),
                {f: j.one(f) for f in hom.objects},
                {a: j.two(a) for a in hom.morphisms},
                name=f"J({x},{y})",
            )
            if not is_equivalence(functor):
                return False
    return True


def isobidescent(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> bool:
    return check_isobidescent(pm, config)


def free_functor_full_on_thunkables(pm: Pseudomonad,
                                    config: Optional[EngineConfig] = None) -> bool:
    """
    F_T faithful on 2-cells, full on 2-cells thunkable for the thunkings
    ``T eta_f``, and every 1-cell admitting a thunking isomorphic to some ``F_T f``.
    """
    c = pm.base
    left = free_left_adjoint(pm, config)
    fp = free_psalg_2category(pm, config)
    bt = build_b_theta_2(abskl2_of_pseudomonad(pm, config), config)
    j = J2(pm, config)
    b = fp.category

    for f in c.onecells:
        for g in c.hom1(*c.ends1(f)):
            cells = c.twocells_between(f, g)
            if len({left.two(a) for a in cells}) != len(cells):
                return False
            images = {bt.left.two(j.two(a)) for a in cells}
            thunkables = {bt.left.two(k) for k in bt.category.twocells_between(j.one(f), j.one(g))}
            if not thunkables <= images:
                return False

    admitting = {t.f for t in bt.morphisms.values()}
    for p in admitting:
        x, y = b.ends1(p)
        if not any(b.invertible_twocells_between(p, left.one(f)) for f in c.hom1(x, y)):
            logger.debug("thunkable 1-cell %s is not isomorphic to a free 1-cell", p)
            return False
    return True


CONDITIONS: Tuple[Callable[[Pseudomonad, Optional[EngineConfig]], bool], ...] = (
    j_is_biequivalence,
    isobidescent,
    free_functor_full_on_thunkables,
)


def check_theorem_2d_profile(pm: Pseudomonad,
                             config: Optional[EngineConfig] = None) -> TwoDimensionalProfile:
    """
    Evaluate the three characterisations independently.

    Raises:
        SizeGuardError: Naming the condition whose search space overflowed.
    """
    cfg = resolve(config)
    values = []
    for number, condition in enumerate(CONDITIONS, start=1):
        try:
            values.append(bool(condition(pm, cfg)))
        except SizeGuardError as e:
            raise SizeGuardError(
                f"condition ({number}): {e.message}",
                search_space=e.search_space,
                bound=e.bound,
                context=f"condition {number}: {e.context}",
            )
    profile = TwoDimensionalProfile(tuple(values))
    if not profile.agree:
        logger.error("2-dimensional profile of %s disagrees: %s", pm.name, values)
    return profile
