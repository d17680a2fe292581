import itertools
import logging
from typing import Dict, List, Mapping, Optional

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError, UnknownCellError
from ..report import ValidationReport
from .pasting import Cell2, LWhisk, RWhisk, VComp, pastings_agree
from .twocategory import Fin2Category
from .twofunctor import TwoFunctor

logger = logging.getLogger(__name__)


def _inverses_from_table(d: Fin2Category, cells: Mapping[str, str]) -> Dict[str, str]:
    return {f: d.inverses[a] for f, a in cells.items() if a in d.inverses}


class PseudoNat:
    """
    A pseudonatural transformation ``source => target``.

    ``components[X]`` is a 1-cell ``F X -> G X``; ``cells[f]`` for ``f: X -> Y``
    is an invertible 2-cell ``F f ; sigma_Y => sigma_X ; G f`` whose inverse is
    ``inverses[f]``. Missing inverses are looked up in the target's table.
    """

    def __init__(
        self,
        source: TwoFunctor,
        target: TwoFunctor,
        components: Mapping[str, str],
        cells: Mapping[str, str],
        inverses: Optional[Mapping[str, str]] = None,
        name: str = "",
    ) -> None:
        self.source = source
        self.target = target
        self.components: Dict[str, str] = {k: components[k] for k in sorted(components)}
        self.cells: Dict[str, str] = {k: cells[k] for k in sorted(cells)}
        found = _inverses_from_table(source.target, self.cells)
        found.update(inverses or {})
        self.inverses: Dict[str, str] = {k: found[k] for k in sorted(found)}
        self.name = name

    @property
    def base(self) -> Fin2Category:
        return self.source.target

    @property
    def _label(self) -> str:
        return self.name or "pseudonatural transformation"

    def __getitem__(self, x: str) -> str:
        try:
            return self.components[x]
        except KeyError:
            raise UnknownCellError(f"{self._label} has no component at {x!r}")

    def cell(self, f: str) -> str:
        try:
            return self.cells[f]
        except KeyError:
            raise UnknownCellError(f"{self._label} has no cell at {f!r}")

    def inverse(self, f: str) -> str:
        try:
            return self.inverses[f]
        except KeyError:
            raise StructuralError(f"{self._label} cell at {f!r} has no inverse")

    def _key(self):
        return (self.source, self.target, tuple(self.components.items()),
                tuple(self.cells.items()), tuple(self.inverses.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoNat):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<PseudoNat {self.name} {self.components}>"


class Modification:
    """A modification ``source => target`` between parallel pseudonatural transformations."""

    def __init__(
        self,
        source: PseudoNat,
        target: PseudoNat,
        components: Mapping[str, str],
        inverses: Optional[Mapping[str, str]] = None,
        name: str = "",
    ) -> None:
        self.source = source
        self.target = target
        self.components: Dict[str, str] = {k: components[k] for k in sorted(components)}
        found = _inverses_from_table(source.base, self.components)
        found.update(inverses or {})
        self.inverses: Dict[str, str] = {k: found[k] for k in sorted(found)}
        self.name = name

    def __getitem__(self, x: str) -> str:
        try:
            return self.components[x]
        except KeyError:
            raise UnknownCellError(f"Modification {self.name} has no component at {x!r}")

    @property
    def is_invertible(self) -> bool:
        return set(self.inverses) == set(self.components)

    def _key(self):
        return (self.source, self.target, tuple(self.components.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Modification):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<Modification {self.name} {self.components}>"


def check_pseudonatural(p: PseudoNat, config: Optional[EngineConfig] = None) -> ValidationReport:
    """
    Every pseudonaturality equation instance that fails.

    Checked: inverse witnesses, the unit condition at identity 1-cells, the
    composition condition for composable pairs, and naturality in 2-cells.
    """
    report = ValidationReport(subject=p.name or "pseudonatural transformation")
    f_, g_ = p.source, p.target
    c, d = f_.source, f_.target
    if g_.source != c or g_.target != d:
        report.add_structural("2-functors are not parallel")
        return report
    for x in c.objects:
        comp = p.components.get(x)
        if comp is None:
            report.add_structural("missing component", object=x)
        elif d.onecells.get(comp) != (f_.obj(x), g_.obj(x)):
            report.add_structural("component has wrong type", object=x, component=comp)
    if report.structural:
        return report
    for f, (x, y) in c.onecells.items():
        cell = p.cells.get(f)
        expected = (d.then1(f_.one(f), p[y]), d.then1(p[x], g_.one(f)))
        if cell is None:
            report.add_structural("missing cell", onecell=f)
        elif d.twocells.get(cell) != expected:
            report.add_structural("cell has wrong type", onecell=f, cell=cell)
        elif f not in p.inverses:
            report.add_structural("cell has no inverse witness", onecell=f, cell=cell)
        elif d.twocells.get(p.inverses[f]) != expected[::-1]:
            report.add_structural("inverse witness has wrong type", onecell=f)
    if report.structural:
        return report

    for f, cell in p.cells.items():
        inv = p.inverses[f]
        dom, cod = d.twocells[cell]
        if d.vcomp(cell, inv) != d.id2(dom) or d.vcomp(inv, cell) != d.id2(cod):
            report.add_violation("inverse", onecell=f)
    for x in c.objects:
        if p.cells[c.id1(x)] != d.id2(p[x]):
            report.add_violation("identity", object=x)
    for (f, g), fg in c.compose_1.items():
        composite = VComp(LWhisk(f_.one(f), Cell2(p.cells[g])),
                          RWhisk(Cell2(p.cells[f]), g_.one(g)))
        if not pastings_agree(d, Cell2(p.cells[fg]), composite, config):
            report.add_violation("composition", pair=[f, g])
    for beta, (f, g) in c.twocells.items():
        x, y = c.onecells[f]
        lhs = VComp(RWhisk(Cell2(f_.two(beta)), p[y]), Cell2(p.cells[g]))
        rhs = VComp(Cell2(p.cells[f]), LWhisk(p[x], Cell2(g_.two(beta))))
        if not pastings_agree(d, lhs, rhs, config):
            report.add_violation("twocell_naturality", twocell=beta)
    return report


def check_modification(m: Modification, config: Optional[EngineConfig] = None) -> ValidationReport:
    report = ValidationReport(subject=m.name or "modification")
    s, t = m.source, m.target
    if s.source != t.source or s.target != t.target:
        report.add_structural("pseudonatural transformations are not parallel")
        return report
    c, d = s.source.source, s.base
    for x in c.objects:
        comp = m.components.get(x)
        if comp is None:
            report.add_structural("missing component", object=x)
        elif d.twocells.get(comp) != (s[x], t[x]):
            report.add_structural("component has wrong type", object=x, component=comp)
    if report.structural:
        return report
    for x, inv in m.inverses.items():
        comp = m.components.get(x)
        if comp is None or d.twocells.get(inv) != (t[x], s[x]):
            report.add_structural("inverse witness has wrong type", object=x)
        elif d.vcomp(comp, inv) != d.id2(s[x]) or d.vcomp(inv, comp) != d.id2(t[x]):
            report.add_violation("inverse", object=x)
    if report.structural:
        return report
    big_f, big_g = s.source, s.target
    for f, (x, y) in c.onecells.items():
        lhs = VComp(LWhisk(big_f.one(f), Cell2(m[y])), Cell2(t.cell(f)))
        rhs = VComp(Cell2(s.cell(f)), RWhisk(Cell2(m[x]), big_g.one(f)))
        if not pastings_agree(d, lhs, rhs, config):
            report.add_violation("modification", onecell=f)
    return report


def identity_pseudonat(f: TwoFunctor) -> PseudoNat:
    d = f.target
    cells = {g: d.id2(f.one(g)) for g in f.source.onecells}
    return PseudoNat(f, f, {x: d.id1(f.obj(x)) for x in f.source.objects}, cells, cells,
                     name="1")


def pseudonat_then(sigma: PseudoNat, tau: PseudoNat) -> PseudoNat:
    """Vertical composite: ``sigma``, then ``tau``."""
    if sigma.target != tau.source:
        raise StructuralError("pseudonatural transformations are not composable")
    d = sigma.base
    c = sigma.source.source
    components = {x: d.then1(sigma[x], tau[x]) for x in c.objects}
    cells = {}
    inverses = {}
    for f, (x, y) in c.onecells.items():
        cells[f] = d.vcomp(d.rwhisk(sigma.cell(f), tau[y]), d.lwhisk(sigma[x], tau.cell(f)))
        inverses[f] = d.vcomp(d.lwhisk(sigma[x], tau.inverse(f)),
                              d.rwhisk(sigma.inverse(f), tau[y]))
    return PseudoNat(sigma.source, tau.target, components, cells, inverses,
                     name=f"{sigma.name};{tau.name}")


def pseudonat_postwhisker(sigma: PseudoNat, h: TwoFunctor) -> PseudoNat:
    """H sigma."""
    return PseudoNat(
        sigma.source.then(h),
        sigma.target.then(h),
        {x: h.one(g) for x, g in sigma.components.items()},
        {f: h.two(a) for f, a in sigma.cells.items()},
        {f: h.two(a) for f, a in sigma.inverses.items()},
        name=f"{h.name}{sigma.name}",
    )


def pseudonat_prewhisker(sigma: PseudoNat, k: TwoFunctor) -> PseudoNat:
    """sigma K."""
    return PseudoNat(
        k.then(sigma.source),
        k.then(sigma.target),
        {x: sigma[k.obj(x)] for x in k.source.objects},
        {f: sigma.cell(k.one(f)) for f in k.source.onecells},
        {f: sigma.inverse(k.one(f)) for f in k.source.onecells},
        name=f"{sigma.name}{k.name}",
    )


def identity_modification(sigma: PseudoNat) -> Modification:
    d = sigma.base
    comps = {x: d.id2(g) for x, g in sigma.components.items()}
    return Modification(sigma, sigma, comps, comps, name="1")


def modification_then(gamma: Modification, delta: Modification) -> Modification:
    d = gamma.source.base
    comps = {x: d.vcomp(a, delta[x]) for x, a in gamma.components.items()}
    inverses = {}
    if gamma.is_invertible and delta.is_invertible:
        inverses = {x: d.vcomp(delta.inverses[x], gamma.inverses[x]) for x in comps}
    return Modification(gamma.source, delta.target, comps, inverses)


def modification_inverse(gamma: Modification) -> Modification:
    if not gamma.is_invertible:
        raise StructuralError(f"Modification {gamma.name} is not invertible")
    return Modification(gamma.target, gamma.source, gamma.inverses, gamma.components,
                        name=f"{gamma.name}^-1")


def modification_postwhisker(gamma: Modification, h: TwoFunctor) -> Modification:
    return Modification(
        pseudonat_postwhisker(gamma.source, h),
        pseudonat_postwhisker(gamma.target, h),
        {x: h.two(a) for x, a in gamma.components.items()},
        {x: h.two(a) for x, a in gamma.inverses.items()},
        name=f"{h.name}{gamma.name}",
    )


def modification_prewhisker(gamma: Modification, k: TwoFunctor) -> Modification:
    return Modification(
        pseudonat_prewhisker(gamma.source, k),
        pseudonat_prewhisker(gamma.target, k),
        {x: gamma[k.obj(x)] for x in k.source.objects},
        {x: gamma.inverses[k.obj(x)] for x in k.source.objects if k.obj(x) in gamma.inverses},
        name=f"{gamma.name}{k.name}",
    )


def modification_rwhisk(gamma: Modification, tau: PseudoNat) -> Modification:
    """``gamma`` followed by the pseudonatural transformation ``tau``."""
    d = tau.base
    return Modification(
        pseudonat_then(gamma.source, tau),
        pseudonat_then(gamma.target, tau),
        {x: d.rwhisk(a, tau[x]) for x, a in gamma.components.items()},
        {x: d.rwhisk(a, tau[x]) for x, a in gamma.inverses.items()},
    )


def modification_lwhisk(tau: PseudoNat, gamma: Modification) -> Modification:
    """The pseudonatural transformation ``tau`` followed by ``gamma``."""
    d = tau.base
    return Modification(
        pseudonat_then(tau, gamma.source),
        pseudonat_then(tau, gamma.target),
        {x: d.lwhisk(tau[x], a) for x, a in gamma.components.items()},
        {x: d.lwhisk(tau[x], a) for x, a in gamma.inverses.items()},
    )


def enumerate_pseudonats(f: TwoFunctor, g: TwoFunctor,
                         config: Optional[EngineConfig] = None) -> List[PseudoNat]:
    """Every pseudonatural transformation ``f => g`` with cells drawn from invertible 2-cells."""
    cfg = resolve(config)
    c, d = f.source, f.target
    objects = list(c.objects)
    component_options = [d.hom1(f.obj(x), g.obj(x)) for x in objects]
    space = 1
    for options in component_options:
        space *= len(options)
    cfg.check_guard(space, "pseudonatural components")
    identities = set(c.identity_1.values())
    free = [h for h in c.onecells if h not in identities]

    results: List[PseudoNat] = []
    for choice in itertools.product(*component_options):
        components = dict(zip(objects, choice))
        cell_options = []
        for h in free:
            x, y = c.onecells[h]
            cell_options.append(d.invertible_twocells_between(
                d.then1(f.one(h), components[y]), d.then1(components[x], g.one(h))))
        space = 1
        for options in cell_options:
            space *= len(options)
        cfg.check_guard(space, "pseudonatural cells")
        fixed = {c.id1(x): d.id2(components[x]) for x in objects}
        for cells_choice in itertools.product(*cell_options):
            cells = dict(fixed)
            cells.update(zip(free, cells_choice))
            candidate = PseudoNat(f, g, components, cells)
            if check_pseudonatural(candidate, cfg).ok:
                results.append(candidate)
    logger.debug("enumerated %d pseudonatural transformations", len(results))
    return results


def enumerate_modifications(sigma: PseudoNat, tau: PseudoNat,
                            config: Optional[EngineConfig] = None) -> List[Modification]:
    cfg = resolve(config)
    d = sigma.base
    objects = list(sigma.source.source.objects)
    options = [d.twocells_between(sigma[x], tau[x]) for x in objects]
    space = 1
    for o in options:
        space *= len(o)
    cfg.check_guard(space, "modification components")
    results = []
    for choice in itertools.product(*options):
        candidate = Modification(sigma, tau, dict(zip(objects, choice)))
        if check_modification(candidate, cfg).ok:
            results.append(candidate)
    logger.debug("enumerated %d modifications", len(results))
    return results
