"""
Morphisms, 2-cells and 3-cells between Kleisli presentations of pseudomonads,
and their lifts along the unit ``(J, 1)``.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError, TheoremDisagreementError
from ..pseudomonadkit import Pseudomonad, free_left_adjoint, free_psalg_2category
from ..report import ValidationReport
from ..twocat import (
    Fin2Category,
    Modification,
    PseudoNat,
    TwoFunctor,
    check_modification,
    check_pseudonatural,
    check_twofunctor,
    enumerate_modifications,
    enumerate_pseudonats,
    enumerate_twofunctors,
    fixture_value,
    identity_twofunctor,
    pseudonat_postwhisker,
    pseudonat_prewhisker,
)
from .comparison import J2
from .structure import (
    FIXTURES,
    AbsKL2,
    ThunkedOneCell,
    ThunkedTwoCategory,
    abskl2_of_pseudomonad,
    build_b_theta_2,
    induced_pseudomonad,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KleisliPresentation2:
    """
    A pseudomonad with a realisation of its Kleisli 2-category.

    ``left`` is a 2-functor ``pseudomonad.base -> category``; ``structure`` is
    set when the presentation is the image of a 2-dimensional structure.
    """
    pseudomonad: Pseudomonad
    category: Fin2Category
    left: TwoFunctor
    structure: Any = None

    def __post_init__(self):
        if self.left.source != self.pseudomonad.base or self.left.target != self.category:
            raise StructuralError("left 2-functor does not match the pseudomonad and category")


def presentation2(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> KleisliPresentation2:
    """Free pseudoalgebras with ``F_T``."""
    fp = free_psalg_2category(pm, config)
    return KleisliPresentation2(pm, fp.category, free_left_adjoint(pm, config))


def tau2(s: AbsKL2, config: Optional[EngineConfig] = None) -> KleisliPresentation2:
    """The pseudomonad on ``B_theta`` presented with ``B`` as its Kleisli 2-category."""
    bt = build_b_theta_2(s, config)
    return KleisliPresentation2(induced_pseudomonad(s, config), s.base, bt.left, structure=s)


def _pseudonat_data(p: PseudoNat) -> Tuple:
    return tuple(p.components.items()), tuple(p.cells.items())


@dataclass(frozen=True)
class KLExtMorphism:
    """``(G, Gbar)`` with ``F_S ; Gbar = G ; F_T`` on the nose."""
    source: KleisliPresentation2
    target: KleisliPresentation2
    g: TwoFunctor
    gbar: TwoFunctor

    def __post_init__(self):
        check_klext_morphism(self).raise_for_violations()


def check_klext_morphism(m: KLExtMorphism) -> ValidationReport:
    report = ValidationReport(subject="Kleisli extension morphism")
    if m.g.source != m.source.pseudomonad.base or m.g.target != m.target.pseudomonad.base:
        report.add_structural("base 2-functor has wrong endpoints")
    if m.gbar.source != m.source.category or m.gbar.target != m.target.category:
        report.add_structural("Kleisli 2-functor has wrong endpoints")
    if report.structural:
        return report
    report.merge(check_twofunctor(m.g), "g")
    report.merge(check_twofunctor(m.gbar), "gbar")
    if report.ok and m.source.left.then(m.gbar) != m.g.then(m.target.left):
        report.add_violation("left_adjoint_square")
    return report


@dataclass(frozen=True)
class KLExt2Cell:
    """A loose 2-cell ``phibar: Gbar => Hbar``, tight when ``phi: G => H`` is given too."""
    source: KLExtMorphism
    target: KLExtMorphism
    phibar: PseudoNat
    phi: Optional[PseudoNat] = None

    @property
    def is_tight(self) -> bool:
        return self.phi is not None

    def __post_init__(self):
        check_klext_2cell(self).raise_for_violations()


def check_klext_2cell(cell: KLExt2Cell, config: Optional[EngineConfig] = None) -> ValidationReport:
    report = ValidationReport(subject="Kleisli extension 2-cell")
    if (cell.phibar.source, cell.phibar.target) != (cell.source.gbar, cell.target.gbar):
        report.add_structural("phibar does not connect the Kleisli 2-functors")
    if cell.phi is not None and (
            (cell.phi.source, cell.phi.target) != (cell.source.g, cell.target.g)):
        report.add_structural("phi does not connect the base 2-functors")
    if report.structural:
        return report
    report.merge(check_pseudonatural(cell.phibar, config), "phibar")
    if cell.phi is None:
        return report
    report.merge(check_pseudonatural(cell.phi, config), "phi")
    if report.ok:
        there = pseudonat_postwhisker(cell.phi, cell.source.target.left)
        back = pseudonat_prewhisker(cell.phibar, cell.source.source.left)
        if _pseudonat_data(there) != _pseudonat_data(back):
            report.add_violation("left_adjoint_compatibility")
    return report


@dataclass(frozen=True)
class KLExt3Cell:
    """A modification ``omegabar``, tight when ``omega`` between the base parts is given too."""
    source: KLExt2Cell
    target: KLExt2Cell
    omegabar: Modification
    omega: Optional[Modification] = None

    @property
    def is_tight(self) -> bool:
        return self.omega is not None

    def __post_init__(self):
        check_klext_3cell(self).raise_for_violations()


def check_klext_3cell(cell: KLExt3Cell, config: Optional[EngineConfig] = None) -> ValidationReport:
    report = ValidationReport(subject="Kleisli extension 3-cell")
    if (cell.omegabar.source, cell.omegabar.target) != (cell.source.phibar, cell.target.phibar):
        report.add_structural("omegabar does not connect the loose parts")
    if cell.omega is not None and (
            (cell.omega.source, cell.omega.target) != (cell.source.phi, cell.target.phi)):
        report.add_structural("omega does not connect the tight parts")
    if report.structural:
        return report
    report.merge(check_modification(cell.omegabar, config), "omegabar")
    if cell.omega is None:
        return report
    report.merge(check_modification(cell.omega, config), "omega")
    left_s = cell.source.source.source.left
    left_t = cell.source.source.target.left
    for x in left_s.source.objects:
        if left_t.two(cell.omega[x]) != cell.omegabar[left_s.obj(x)]:
            report.add_violation("left_adjoint_compatibility", object=x)
    return report


def unit_morphism(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> KLExtMorphism:
    """``(J, 1)`` from the free-pseudoalgebra presentation to its thunked image."""
    s = abskl2_of_pseudomonad(pm, config)
    fp = free_psalg_2category(pm, config)
    return KLExtMorphism(presentation2(pm, config), tau2(s, config), J2(pm, config),
                         identity_twofunctor(fp.category))


def _target_structure(m: KLExtMorphism) -> AbsKL2:
    s = m.target.structure
    if not isinstance(s, AbsKL2):
        raise StructuralError("target is not the image of a 2-dimensional structure")
    return s


def _lifted_thunking(m: KLExtMorphism, s: AbsKL2, target: AbsKL2, target_bt: ThunkedTwoCategory,
                     t: ThunkedOneCell, config: Optional[EngineConfig]) -> str:
    pm = m.source.pseudomonad
    fp = free_psalg_2category(pm, config)
    g, gbar = m.g, m.gbar
    q, qq = s.comonad, target.comonad.endo
    b = fp.category
    x, y = b.ends1(t.f)
    p = fp.morphism(t.f).p

    def thunking(f: str) -> str:
        return target_bt.morphism(g.one(f)).theta_f

    def qg1(f: str) -> str:
        return qq.one(gbar.one(f))

    def qg2(a: str) -> str:
        return qq.two(gbar.two(a))

    bindings = {
        "P": gbar.one(t.f),
        "pi_X": target.theta[g.obj(x)],
        "pi_Y": target.theta[g.obj(y)],
        "pi_TY": target.theta[g.obj(pm.T(y))],
        "QGu_X": qg2(s.u[x]),
        "QGu_Y": qg2(s.u[y]),
        "pi_eta_X": thunking(pm.eta[x]),
        "pi_eta_Y": thunking(pm.eta[y]),
        "QGeps_Y": qg1(q.eps[y]),
        "Gtheta_P": gbar.two(t.theta_f),
        "Gtheta_X": gbar.one(s.theta[x]),
        "pi_p": thunking(p),
        "QGQP": qg1(q.endo.one(t.f)),
        "QGtheta_X": qg1(s.theta[x]),
        "QGeps_P": qg2(q.eps.cell(t.f)),
        "QGP": qg1(t.f),
    }
    return fixture_value(FIXTURES["lift_thunking"], target.base, bindings, config)


def _count_lifts(m: KLExtMorphism, bt: ThunkedTwoCategory, target_bt: ThunkedTwoCategory,
                 j: TwoFunctor, config: EngineConfig) -> int:
    onecells = list(bt.morphisms)
    options = [target_bt.thunked_over(m.gbar.one(bt.morphisms[k].f)) for k in onecells]
    space = 1
    for o in options:
        space *= len(o)
    config.check_uniqueness_guard(space, "lifts of a Kleisli extension morphism")
    found = 0
    for choice in itertools.product(*options):
        onecell_map = dict(zip(onecells, choice))
        twocell_map = {}
        for k, (phi, src, tgt) in bt.cells.items():
            image = target_bt.cells_get(m.gbar.two(phi), onecell_map[src], onecell_map[tgt])
            if image is None:
                break
            twocell_map[k] = image
        else:
            candidate = TwoFunctor(bt.category, target_bt.category, dict(m.g.object_map),
                                   onecell_map, twocell_map)
            if check_twofunctor(candidate).ok and j.then(candidate) == m.g:
                found += 1
    return found


def lift_morphism(m: KLExtMorphism, config: Optional[EngineConfig] = None,
                  check_unique: bool = True) -> KLExtMorphism:
    """
    The unique ``(G', Gbar)`` out of the thunked image with ``J ; G' = G``.

    Thunked 1-cells ``(P, theta_P)`` go to ``(Gbar P, pi)`` with ``pi`` the lifted
    thunking; thunkable 2-cells go to their images under ``Gbar``.

    Raises:
        StructuralError: If ``m`` does not start at a free-pseudoalgebra presentation
            or its target is not the image of a structure.
        TheoremDisagreementError: If a lifted thunking is invalid or the lift is not unique.
    """
    cfg = resolve(config)
    pm = m.source.pseudomonad
    if m.source != presentation2(pm, cfg):
        raise StructuralError("morphism does not start at the free-pseudoalgebra presentation")
    target = _target_structure(m)
    s = abskl2_of_pseudomonad(pm, cfg)
    bt = build_b_theta_2(s, cfg)
    target_bt = build_b_theta_2(target, cfg)

    onecells = {}
    for k, t in bt.morphisms.items():
        thunked = ThunkedOneCell(m.gbar.one(t.f), _lifted_thunking(m, s, target, target_bt, t, cfg))
        image = target_bt.ids.get(thunked)
        if image is None:
            logger.error("lifted thunking of %s fails the thunking conditions", k)
            raise TheoremDisagreementError(f"lifted thunking of {k!r} is not a thunking")
        onecells[k] = image
    twocells = {}
    for k, (phi, src, tgt) in bt.cells.items():
        image = target_bt.cells_get(m.gbar.two(phi), onecells[src], onecells[tgt])
        if image is None:
            raise TheoremDisagreementError(f"image of thunkable 2-cell {k!r} is not thunkable")
        twocells[k] = image
    lifted = TwoFunctor(bt.category, target_bt.category, dict(m.g.object_map), onecells,
                        twocells, name=f"{m.g.name}'" if m.g.name else "")
    j = J2(pm, cfg)
    if not check_twofunctor(lifted).ok or j.then(lifted) != m.g:
        raise TheoremDisagreementError("lifted 2-functor does not restrict along J to G")
    if check_unique:
        count = _count_lifts(m, bt, target_bt, j, cfg)
        if count != 1:
            logger.error("found %d lifts of %s instead of one", count, m.g.name)
            raise TheoremDisagreementError(f"expected a unique lift, found {count}")
    return KLExtMorphism(tau2(s, cfg), m.target, lifted, m.gbar)


def lift_2cell(cell: KLExt2Cell, config: Optional[EngineConfig] = None) -> PseudoNat:
    """
    The pseudonatural ``phi'`` between the lifts with ``phi' J = phi``.

    Loose 2-cells are returned unchanged.

    Raises:
        TheoremDisagreementError: If a pseudonaturality cell is not thunkable.
    """
    if cell.phi is None:
        return cell.phibar
    cfg = resolve(config)
    source = lift_morphism(cell.source, cfg, check_unique=False)
    target = lift_morphism(cell.target, cfg, check_unique=False)
    bt_target = build_b_theta_2(_target_structure(cell.source), cfg)
    d = bt_target.category
    bt = build_b_theta_2(abskl2_of_pseudomonad(cell.source.source.pseudomonad, cfg), cfg)
    components = dict(cell.phi.components)
    cells = {}
    for k, t in bt.morphisms.items():
        x, y = bt.category.ends1(k)
        image = bt_target.cells_get(cell.phibar.cell(t.f),
                                    d.then1(source.g.one(k), components[y]),
                                    d.then1(components[x], target.g.one(k)))
        if image is None:
            raise TheoremDisagreementError(f"pseudonaturality cell at {k!r} is not thunkable")
        cells[k] = image
    lifted = PseudoNat(source.g, target.g, components, cells,
                       name=f"{cell.phi.name}'" if cell.phi.name else "")
    if not check_pseudonatural(lifted, cfg).ok:
        raise TheoremDisagreementError("lifted transformation is not pseudonatural")
    j = J2(cell.source.source.pseudomonad, cfg)
    if _pseudonat_data(pseudonat_prewhisker(lifted, j)) != _pseudonat_data(cell.phi):
        raise TheoremDisagreementError("lifted transformation does not restrict along J")
    return lifted


def lift_3cell(cell: KLExt3Cell, config: Optional[EngineConfig] = None) -> Modification:
    """
    The modification between the lifted 2-cells with the components of ``omega``.

    Raises:
        StructuralError: If ``cell`` is loose.
        TheoremDisagreementError: If the lifted components fail the modification law.
    """
    if cell.omega is None:
        raise StructuralError("only tight 3-cells lift along the unit")
    cfg = resolve(config)
    source = lift_2cell(cell.source, cfg)
    target = lift_2cell(cell.target, cfg)
    lifted = Modification(source, target, dict(cell.omega.components))
    if not check_modification(lifted, cfg).ok:
        raise TheoremDisagreementError("lifted components do not form a modification")
    return lifted


def _klext_morphisms(source: KleisliPresentation2, target: KleisliPresentation2,
                     config: EngineConfig) -> List[KLExtMorphism]:
    bases = enumerate_twofunctors(source.pseudomonad.base, target.pseudomonad.base, config)
    kleislis = enumerate_twofunctors(source.category, target.category, config)
    found = []
    for g in bases:
        for gbar in kleislis:
            if source.left.then(gbar) == g.then(target.left):
                found.append(KLExtMorphism(source, target, g, gbar))
    return found


def _tight_2cells(g: KLExtMorphism, h: KLExtMorphism, config: EngineConfig) -> List[KLExt2Cell]:
    found = []
    for phibar in enumerate_pseudonats(g.gbar, h.gbar, config):
        for phi in enumerate_pseudonats(g.g, h.g, config):
            there = pseudonat_postwhisker(phi, g.target.left)
            back = pseudonat_prewhisker(phibar, g.source.left)
            if _pseudonat_data(there) == _pseudonat_data(back):
                found.append(KLExt2Cell(g, h, phibar, phi))
    return found


def _tight_3cells(a: KLExt2Cell, b: KLExt2Cell, config: EngineConfig) -> List[KLExt3Cell]:
    left_s, left_t = a.source.source.left, a.source.target.left
    found = []
    for omegabar in enumerate_modifications(a.phibar, b.phibar, config):
        for omega in enumerate_modifications(a.phi, b.phi, config):
            if all(left_t.two(omega[x]) == omegabar[left_s.obj(x)] for x in left_s.source.objects):
                found.append(KLExt3Cell(a, b, omegabar, omega))
    return found


def _restricted(cell: KLExt2Cell, j: TwoFunctor) -> Tuple:
    return _pseudonat_data(pseudonat_prewhisker(cell.phi, j)), _pseudonat_data(cell.phibar)


def verify_gray_unit(pm: Pseudomonad, target: AbsKL2,
                     config: Optional[EngineConfig] = None) -> bool:
    """
    Whether precomposition with ``(J, 1)`` is bijective on morphisms, tight
    2-cells and tight 3-cells into ``tau2(target)``, with the lifts as inverses.

    Raises:
        SizeGuardError: If an enumeration exceeds the guard.
    """
    cfg = resolve(config)
    j = J2(pm, cfg)
    s = abskl2_of_pseudomonad(pm, cfg)
    into = tau2(target, cfg)
    below = _klext_morphisms(presentation2(pm, cfg), into, cfg)
    above = _klext_morphisms(tau2(s, cfg), into, cfg)

    restricted = {(j.then(m.g), m.gbar) for m in above}
    if len(restricted) != len(above) or restricted != {(m.g, m.gbar) for m in below}:
        logger.debug("precomposition with J is not bijective on morphisms")
        return False
    lifts: Dict[Tuple[TwoFunctor, TwoFunctor], KLExtMorphism] = {}
    for m in below:
        lifted = lift_morphism(m, cfg)
        if (j.then(lifted.g), lifted.gbar) != (m.g, m.gbar):
            return False
        lifts[(m.g, m.gbar)] = lifted

    for g, h in itertools.product(below, repeat=2):
        lower = _tight_2cells(g, h, cfg)
        upper = _tight_2cells(lifts[(g.g, g.gbar)], lifts[(h.g, h.gbar)], cfg)
        keys = {_restricted(c, j) for c in upper}
        if len(keys) != len(upper) or keys != {(_pseudonat_data(c.phi), _pseudonat_data(c.phibar))
                                               for c in lower}:
            logger.debug("precomposition with J is not bijective on tight 2-cells")
            return False
        for c in lower:
            restricted_2 = pseudonat_prewhisker(lift_2cell(c, cfg), j)
            if _pseudonat_data(restricted_2) != _pseudonat_data(c.phi):
                return False
        for a, b in itertools.product(lower, repeat=2):
            lower_3 = _tight_3cells(a, b, cfg)
            lifted_a = KLExt2Cell(lifts[(g.g, g.gbar)], lifts[(h.g, h.gbar)], a.phibar,
                                  lift_2cell(a, cfg))
            lifted_b = KLExt2Cell(lifts[(g.g, g.gbar)], lifts[(h.g, h.gbar)], b.phibar,
                                  lift_2cell(b, cfg))
            upper_3 = _tight_3cells(lifted_a, lifted_b, cfg)
            restricted_3 = {tuple(o.omega.components.items()) for o in upper_3}
            if len(restricted_3) != len(upper_3) or restricted_3 != {
                    tuple(o.omega.components.items()) for o in lower_3}:
                logger.debug("precomposition with J is not bijective on tight 3-cells")
                return False
            for o in lower_3:
                if lift_3cell(o, cfg).components != o.omega.components:
                    return False
    return True
