import logging
from dataclasses import dataclass

from ..fincat import Functor, NatTrans, check_functor, check_natural, identity_functor
from ..monadkit import KleisliPresentation
from ..report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoMorphism:
    """
    A co-morphism of monads ``(f, fbar)``: ``f`` between the bases and ``fbar``
    between the Kleisli realisations, with ``fbar . F_S = F_T . f`` on the nose.
    """
    source: KleisliPresentation
    target: KleisliPresentation
    f: Functor
    fbar: Functor

    def __post_init__(self):
        check_comorphism(self).raise_for_violations()


def check_comorphism(g: CoMorphism) -> ValidationReport:
    report = ValidationReport(subject="co-morphism")
    if g.f.source != g.source.monad.base or g.f.target != g.target.monad.base:
        report.add_structural("base functor has wrong endpoints")
    if g.fbar.source != g.source.category or g.fbar.target != g.target.category:
        report.add_structural("Kleisli functor has wrong endpoints")
    if report.structural:
        return report
    report.merge(check_functor(g.f), "f")
    report.merge(check_functor(g.fbar), "fbar")
    if report.ok and g.source.left.then(g.fbar) != g.f.then(g.target.left):
        report.add_violation("left_adjoint_square")
    return report


def identity_comorphism(p: KleisliPresentation) -> CoMorphism:
    return CoMorphism(p, p, identity_functor(p.monad.base), identity_functor(p.category))


def comorphism_compose(g: CoMorphism, h: CoMorphism) -> CoMorphism:
    """``g`` followed by ``h``."""
    return CoMorphism(g.source, h.target, g.f.then(h.f), g.fbar.then(h.fbar))


@dataclass(frozen=True)
class TightTwoCell:
    """A pair ``(phi, phibar)`` with ``F_T phi = phibar F_S`` componentwise."""
    source: CoMorphism
    target: CoMorphism
    phi: NatTrans
    phibar: NatTrans

    def __post_init__(self):
        check_tight_two_cell(self).raise_for_violations()

    def loose(self) -> NatTrans:
        return self.phibar


def check_tight_two_cell(cell: TightTwoCell) -> ValidationReport:
    report = ValidationReport(subject="tight 2-cell")
    if cell.phi.source != cell.source.f or cell.phi.target != cell.target.f:
        report.add_structural("phi does not connect the base functors")
    if cell.phibar.source != cell.source.fbar or cell.phibar.target != cell.target.fbar:
        report.add_structural("phibar does not connect the Kleisli functors")
    if report.structural:
        return report
    report.merge(check_natural(cell.phi), "phi")
    report.merge(check_natural(cell.phibar), "phibar")
    if not report.ok:
        return report
    src_left = cell.source.source.left
    tgt_left = cell.source.target.left
    for x in src_left.source.objects:
        if tgt_left.mor(cell.phi[x]) != cell.phibar[src_left.obj(x)]:
            report.add_violation("left_adjoint_compatibility", object=x)
    return report
