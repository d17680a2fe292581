import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError, UnknownCellError
from ..fincat import FinCategory, Functor, is_equivalence, named_cache, tag
from ..pseudomonadkit import Pseudomonad
from ..report import ValidationReport
from ..twocat import fixture_holds
from .structure import FIXTURES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DescentCone:
    """A 1-cell ``g: X -> TY`` with descent datum ``gbar: g ; eta_TY => g ; T eta_Y``."""
    source: str
    target: str
    g: str
    gbar: str


def cone_id(cone: DescentCone) -> str:
    return tag("cone", cone.g, cone.gbar)


def cone_arrow_id(phi: str, source: str, target: str) -> str:
    return tag("conem", phi, source, target)


def descent_type(pm: Pseudomonad, g: str, y: str) -> Tuple[str, str]:
    c, t = pm.base, pm.endo
    return c.then1(g, pm.eta[t.obj(y)]), c.then1(g, t.one(pm.eta[y]))


def check_descent_cone(pm: Pseudomonad, cone: DescentCone,
                       config: Optional[EngineConfig] = None) -> ValidationReport:
    report = ValidationReport(subject=f"descent cone {cone.g}")
    c, t, eta = pm.base, pm.endo, pm.eta
    y = cone.target
    ty = t.obj(y)
    if c.onecells.get(cone.g) != (cone.source, ty):
        report.add_structural("cone leg has wrong type", onecell=cone.g)
        return report
    if c.twocells.get(cone.gbar) != descent_type(pm, cone.g, y):
        report.add_structural("descent datum has wrong type", twocell=cone.gbar)
        return report
    if not c.is_invertible(cone.gbar):
        report.add_structural("descent datum is not invertible", twocell=cone.gbar)
        return report
    bindings = {
        "g": cone.g,
        "gbar": cone.gbar,
        "lambda_Y": pm.lam[y],
        "rho_Y": pm.rho[y],
        "mu_Y": pm.mu[y],
        "eta_T2Y": eta[t.obj(ty)],
        "T2eta_Y": t.one(t.one(eta[y])),
        "Teta_TY": t.one(eta[ty]),
        "eta_Teta_Y": eta.cell(t.one(eta[y])),
        "eta_eta_TY": eta.cell(eta[ty]),
        "Teta_eta_Y": t.two(eta.cell(eta[y])),
    }
    if not fixture_holds(FIXTURES["descent_unit"], c, bindings, config):
        report.add_violation("descent_unit", cone=cone.g, datum=cone.gbar)
    if not fixture_holds(FIXTURES["descent_cocycle"], c, bindings, config):
        report.add_violation("descent_cocycle", cone=cone.g, datum=cone.gbar)
    return report


def is_cone_morphism(pm: Pseudomonad, phi: str, source: DescentCone, target: DescentCone,
                     config: Optional[EngineConfig] = None) -> bool:
    c, t = pm.base, pm.endo
    if c.twocells.get(phi) != (source.g, target.g):
        raise StructuralError(f"2-cell {phi!r} does not go from {source.g!r} to {target.g!r}")
    y = source.target
    bindings = {
        "phi": phi,
        "gbar": source.gbar,
        "hbar": target.gbar,
        "eta_TY": pm.eta[t.obj(y)],
        "Teta_Y": t.one(pm.eta[y]),
    }
    return fixture_holds(FIXTURES["cone_morphism"], c, bindings, config)


class DescentCones:
    """The category ``Cone_T(X, Y)`` of descent cones and their morphisms."""

    def __init__(self, pm: Pseudomonad, x: str, y: str,
                 config: Optional[EngineConfig] = None) -> None:
        self.pseudomonad = pm
        self.source = x
        self.target = y
        cfg = resolve(config)
        c = pm.base
        legs = c.hom1(x, pm.endo.obj(y))
        cfg.check_guard(sum(len(c.twocells_between(*descent_type(pm, g, y))) for g in legs),
                        "descent cone candidates")

        self.cones: Dict[str, DescentCone] = {}
        for g in legs:
            for gbar in c.invertible_twocells_between(*descent_type(pm, g, y)):
                cone = DescentCone(x, y, g, gbar)
                if check_descent_cone(pm, cone, cfg).ok:
                    self.cones[cone_id(cone)] = cone

        self.arrows: Dict[str, Tuple[str, str, str]] = {}
        for a, ca in self.cones.items():
            for b, cb in self.cones.items():
                for phi in c.twocells_between(ca.g, cb.g):
                    if is_cone_morphism(pm, phi, ca, cb, cfg):
                        self.arrows[cone_arrow_id(phi, a, b)] = (phi, a, b)

        def compose(f: str, g: str) -> str:
            phi, src, _ = self.arrows[f]
            psi, _, tgt = self.arrows[g]
            return cone_arrow_id(c.vcomp(phi, psi), src, tgt)

        self.category = FinCategory.build(
            self.cones,
            {k: (src, tgt) for k, (_, src, tgt) in self.arrows.items()},
            {k: cone_arrow_id(c.id2(cone.g), k, k) for k, cone in self.cones.items()},
            compose,
            name=f"Cone({x},{y})",
        )
        logger.debug("Cone(%s, %s): %d cones, %d morphisms", x, y, len(self.cones),
                     len(self.arrows))

    def cone(self, k: str) -> DescentCone:
        try:
            return self.cones[k]
        except KeyError:
            raise UnknownCellError(f"Unknown descent cone {k!r}")

    def arrow(self, phi: str, source: str, target: str) -> str:
        k = cone_arrow_id(phi, source, target)
        if k not in self.arrows:
            raise StructuralError(f"{phi!r} is not a cone morphism {source} => {target}")
        return k


@named_cache(maxsize=256)
def descent_cones(pm: Pseudomonad, x: str, y: str,
                  config: Optional[EngineConfig] = None) -> DescentCones:
    return DescentCones(pm, x, y, config)


def cone_category(pm: Pseudomonad, x: str, y: str,
                  config: Optional[EngineConfig] = None) -> FinCategory:
    """
    Descent cones from ``X`` to ``Y`` under vertical composition.

    Raises:
        SizeGuardError: If the candidate descent data exceed the guard.
    """
    return descent_cones(pm, x, y, config).category


def canonical_cone(pm: Pseudomonad, g: str) -> DescentCone:
    """``(g ; eta_Y, g eta_{eta_Y})``."""
    c = pm.base
    x, y = c.ends1(g)
    eta_y = pm.eta[y]
    return DescentCone(x, y, c.then1(g, eta_y), c.lwhisk(g, pm.eta.cell(eta_y)))


def canonical_cone_functor(pm: Pseudomonad, x: str, y: str,
                           config: Optional[EngineConfig] = None) -> Functor:
    c = pm.base
    cones = descent_cones(pm, x, y, config)
    hom = c.hom_category(x, y)
    eta_y = pm.eta[y]
    objects = {g: cone_id(canonical_cone(pm, g)) for g in hom.objects}
    for g, k in objects.items():
        if k not in cones.cones:
            raise StructuralError(f"canonical cone on {g!r} fails the descent conditions")
    morphisms = {
        beta: cones.arrow(c.rwhisk(beta, eta_y), objects[f], objects[g])
        for beta, (f, g) in hom.morphisms.items()
    }
    return Functor(hom, cones.category, objects, morphisms, name="canonical_cone")


def check_isobidescent(pm: Pseudomonad, config: Optional[EngineConfig] = None) -> bool:
    """Whether every canonical functor ``hom(X, Y) -> Cone_T(X, Y)`` is an equivalence."""
    c = pm.base
    for x in c.objects:
        for y in c.objects:
            if not is_equivalence(canonical_cone_functor(pm, x, y, config)):
                logger.debug("canonical cone functor (%s, %s) is not an equivalence", x, y)
                return False
    return True


def cones_isomorphic(pm: Pseudomonad, x: str, y: str, first: DescentCone, second: DescentCone,
                     config: Optional[EngineConfig] = None) -> bool:
    cones = descent_cones(pm, x, y, config)
    a, b = cone_id(first), cone_id(second)
    if a not in cones.cones or b not in cones.cones:
        raise UnknownCellError("cones_isomorphic needs two valid descent cones")
    return any(cones.category.is_iso(m) for m in cones.category.hom(a, b))
