import logging
from typing import Dict, Mapping, NamedTuple

from ..exceptions import TheoremDisagreementError, UnknownCellError
from ..fincat import FinCategory, Functor, NatTrans, identity_functor, named_cache
from ..monadkit import (
    Adjunction,
    Comonad,
    KleisliPresentation,
    Monad,
    induced_comonad,
    induced_monad,
    kleisli,
)
from ..report import ValidationReport

logger = logging.getLogger(__name__)


class AbsKL1:
    """
    An abstract Kleisli structure: a comonad with a chosen coalgebra
    ``theta_X: X -> QX`` on every object, such that ``theta_{QX} = delta_X``.
    """

    def __init__(self, comonad: Comonad, theta: Mapping[str, str], name: str = "",
                 validate: bool = True) -> None:
        self.comonad = comonad
        self.theta: Dict[str, str] = {x: theta[x] for x in sorted(theta)}
        self.name = name
        if validate:
            check_abskl1(self).raise_for_violations()

    @property
    def base(self) -> FinCategory:
        return self.comonad.base

    def _key(self):
        return (self.comonad, tuple(self.theta.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbsKL1):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<AbsKL1 {self.name} on {self.base!r}>"


def check_abskl1(s: AbsKL1) -> ValidationReport:
    report = ValidationReport(subject=s.name or "abstract Kleisli structure")
    b, q = s.base, s.comonad
    for x in b.objects:
        th = s.theta.get(x)
        if th is None:
            report.add_structural("missing theta component", object=x)
        elif b.morphisms.get(th) != (x, q.endo.obj(x)):
            report.add_structural("theta component has wrong type", object=x, morphism=th)
    if report.structural:
        return report
    for x in b.objects:
        th = s.theta[x]
        if b.then(th, q.counit[x]) != b.identity(x):
            report.add_violation("coalgebra_counit", object=x)
        if b.then(th, q.comult[x]) != b.then(th, q.Q(th)):
            report.add_violation("coalgebra_coassociativity", object=x)
        if s.theta[q.endo.obj(x)] != q.comult[x]:
            report.add_violation("lifting", object=x)
    return report


def thunkable(s: AbsKL1, f: str) -> bool:
    """
    Whether ``f: X -> Y`` is a coalgebra map ``(X, theta_X) -> (Y, theta_Y)``.

    Raises:
        UnknownCellError: If ``f`` is not a morphism of the base.

    Example:
        >>> thunkable(s, s.base.identity("a"))
        True
    """
    b = s.base
    if f not in b.morphisms:
        raise UnknownCellError(f"Unknown morphism {f!r}")
    x, y = b.morphisms[f]
    return b.then(s.theta[x], s.comonad.Q(f)) == b.then(f, s.theta[y])


class ThetaStructure(NamedTuple):
    category: FinCategory
    adjunction: Adjunction
    monad: Monad


@named_cache(maxsize=256)
def build_b_theta(s: AbsKL1) -> ThetaStructure:
    """
    The subcategory of thunkable morphisms with the adjunction ``F_theta -| U_theta``.

    ``F_theta`` is the inclusion, ``U_theta`` sends ``f`` to ``Qf``, the unit is
    ``theta`` and the counit is ``epsilon``. The comonad induced back on the
    base must be the structure's comonad.

    Raises:
        TheoremDisagreementError: If the induced comonad differs from ``s.comonad``.
    """
    b, q = s.base, s.comonad
    thunkables = [f for f in b.morphisms if thunkable(s, f)]
    b_theta = b.subcategory(thunkables, name=f"{b.name}_theta" if b.name else "B_theta")

    left = Functor(b_theta, b, {x: x for x in b.objects}, {f: f for f in thunkables},
                   name="F_theta")
    right = Functor(b, b_theta, dict(q.endo.object_map), dict(q.endo.morphism_map),
                    name="U_theta")
    unit = NatTrans(identity_functor(b_theta), left.then(right), dict(s.theta))
    counit = NatTrans(right.then(left), identity_functor(b), dict(q.counit.components))
    adjunction = Adjunction(left, right, unit, counit)

    if induced_comonad(adjunction) != q:
        logger.error("comonad induced on %s differs from the structure's comonad", b.name)
        raise TheoremDisagreementError(
            "comonad induced by F_theta -| U_theta differs from the structure's comonad"
        )
    monad = induced_monad(adjunction, name=f"theta({s.name})" if s.name else "theta")
    logger.info("B_theta: %d of %d morphisms thunkable", len(thunkables), len(b.morphisms))
    return ThetaStructure(b_theta, adjunction, monad)


@named_cache(maxsize=256)
def kleisli_abskl(m: Monad) -> AbsKL1:
    """The structure on the Kleisli category with ``theta_X = F_T eta_X``."""
    _, adjunction = kleisli(m)
    comonad = induced_comonad(adjunction)
    theta = {x: adjunction.left.mor(m.unit[x]) for x in m.base.objects}
    return AbsKL1(comonad, theta, name=f"kl({m.name})" if m.name else "kl")


def tau(s: AbsKL1) -> KleisliPresentation:
    """The monad on ``B_theta`` presented with ``B`` as its Kleisli category."""
    bt = build_b_theta(s)
    return KleisliPresentation(bt.monad, s.base, bt.adjunction.left, structure=s)
