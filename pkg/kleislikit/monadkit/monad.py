import logging
from typing import Optional

from ..exceptions import StructuralError
from ..fincat import (
    FinCategory,
    Functor,
    NatTrans,
    check_functor,
    check_natural,
    identity_functor,
    identity_nat,
)
from ..report import ValidationReport

logger = logging.getLogger(__name__)


class Monad:
    """
    A monad (T, eta, mu) on a finite category.

    Validated on construction; invalid data raises instead of being repaired.
    """

    def __init__(self, endo: Functor, unit: NatTrans, mult: NatTrans, name: str = "",
                 validate: bool = True) -> None:
        self.endo = endo
        self.unit = unit
        self.mult = mult
        self.name = name
        if validate:
            check_monad(self).raise_for_violations()

    @property
    def base(self) -> FinCategory:
        return self.endo.source

    def T(self, cell: str) -> str:
        return self.endo.mor(cell)

    def _key(self):
        return (self.endo, self.unit, self.mult)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monad):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<Monad {self.name} on {self.base!r}>"


class Comonad:
    """A comonad (Q, epsilon, delta); validated on construction."""

    def __init__(self, endo: Functor, counit: NatTrans, comult: NatTrans, name: str = "",
                 validate: bool = True) -> None:
        self.endo = endo
        self.counit = counit
        self.comult = comult
        self.name = name
        if validate:
            check_comonad(self).raise_for_violations()

    @property
    def base(self) -> FinCategory:
        return self.endo.source

    def Q(self, cell: str) -> str:
        return self.endo.mor(cell)

    def _key(self):
        return (self.endo, self.counit, self.comult)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Comonad):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<Comonad {self.name} on {self.base!r}>"


class Adjunction:
    """
    ``left -| right`` with unit ``1 => left.then(right)`` and counit
    ``right.then(left) => 1``.
    """

    def __init__(self, left: Functor, right: Functor, unit: NatTrans, counit: NatTrans,
                 validate: bool = True) -> None:
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit
        if validate:
            check_adjunction(self).raise_for_violations()

    def _key(self):
        return (self.left, self.right, self.unit, self.counit)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Adjunction):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())


def _check_endo(report: ValidationReport, endo: Functor) -> bool:
    if endo.source != endo.target:
        report.add_structural("endofunctor has different source and target")
        return False
    report.merge(check_functor(endo), "endo")
    return not report.structural and not report.violations


def check_monad(m: Monad) -> ValidationReport:
    report = ValidationReport(subject=m.name or "monad")
    if not _check_endo(report, m.endo):
        return report
    t = m.endo
    c = m.base
    if m.unit.source != identity_functor(c) or m.unit.target != t:
        report.add_structural("unit must be 1 => T")
    if m.mult.source != t.then(t) or m.mult.target != t:
        report.add_structural("multiplication must be T^2 => T")
    if report.structural:
        return report
    report.merge(check_natural(m.unit), "unit")
    report.merge(check_natural(m.mult), "mult")
    if not report.ok:
        return report
    for x in c.objects:
        tx = t.obj(x)
        eta, mu = m.unit[x], m.mult[x]
        if c.then(t.mor(eta), mu) != c.identity(tx):
            report.add_violation("right_unit", object=x)
        if c.then(m.unit[tx], mu) != c.identity(tx):
            report.add_violation("left_unit", object=x)
        if c.then(t.mor(mu), mu) != c.then(m.mult[tx], mu):
            report.add_violation("associativity", object=x)
    return report


def check_comonad(q: Comonad) -> ValidationReport:
    report = ValidationReport(subject=q.name or "comonad")
    if not _check_endo(report, q.endo):
        return report
    e = q.endo
    c = q.base
    if q.counit.source != e or q.counit.target != identity_functor(c):
        report.add_structural("counit must be Q => 1")
    if q.comult.source != e or q.comult.target != e.then(e):
        report.add_structural("comultiplication must be Q => Q^2")
    if report.structural:
        return report
    report.merge(check_natural(q.counit), "counit")
    report.merge(check_natural(q.comult), "comult")
    if not report.ok:
        return report
    for x in c.objects:
        qx = e.obj(x)
        delta = q.comult[x]
        if c.then(delta, q.counit[qx]) != c.identity(qx):
            report.add_violation("left_counit", object=x)
        if c.then(delta, e.mor(q.counit[x])) != c.identity(qx):
            report.add_violation("right_counit", object=x)
        if c.then(delta, q.comult[qx]) != c.then(delta, e.mor(delta)):
            report.add_violation("coassociativity", object=x)
    return report


def check_adjunction(a: Adjunction) -> ValidationReport:
    report = ValidationReport(subject="adjunction")
    left, right = a.left, a.right
    if left.target != right.source or right.target != left.source:
        report.add_structural("functors do not form an adjoint pair")
        return report
    b, c = left.source, left.target
    if a.unit.source != identity_functor(b) or a.unit.target != left.then(right):
        report.add_structural("unit must be 1 => RL")
    if a.counit.source != right.then(left) or a.counit.target != identity_functor(c):
        report.add_structural("counit must be LR => 1")
    if report.structural:
        return report
    report.merge(check_functor(left), "left")
    report.merge(check_functor(right), "right")
    report.merge(check_natural(a.unit), "unit")
    report.merge(check_natural(a.counit), "counit")
    if not report.ok:
        return report
    for x in b.objects:
        lx = left.obj(x)
        if c.then(left.mor(a.unit[x]), a.counit[lx]) != c.identity(lx):
            report.add_violation("left_triangle", object=x)
    for y in c.objects:
        ry = right.obj(y)
        if b.then(a.unit[ry], right.mor(a.counit[y])) != b.identity(ry):
            report.add_violation("right_triangle", object=y)
    return report


def induced_monad(a: Adjunction, name: str = "") -> Monad:
    """``T = RL`` with unit from the adjunction and ``mu_X = R(epsilon_{LX})``."""
    t = a.left.then(a.right)
    mult = NatTrans(
        t.then(t), t,
        {x: a.right.mor(a.counit[a.left.obj(x)]) for x in a.left.source.objects},
    )
    return Monad(t, a.unit, mult, name=name)


def induced_comonad(a: Adjunction, name: str = "") -> Comonad:
    """``Q = LR`` with counit from the adjunction and ``delta_A = L(eta_{RA})``."""
    q = a.right.then(a.left)
    comult = NatTrans(
        q, q.then(q),
        {y: a.left.mor(a.unit[a.right.obj(y)]) for y in a.left.target.objects},
    )
    return Comonad(q, a.counit, comult, name=name)


def identity_monad(c: FinCategory) -> Monad:
    ident = identity_functor(c)
    return Monad(ident, identity_nat(ident), identity_nat(ident), name=f"id({c.name})")


def identity_comonad(c: FinCategory) -> Comonad:
    ident = identity_functor(c)
    return Comonad(ident, identity_nat(ident), identity_nat(ident), name=f"id({c.name})")


def require_same_base(a: FinCategory, b: FinCategory, what: Optional[str] = None) -> None:
    if a != b:
        raise StructuralError(f"{what or 'values'} live on different categories")
