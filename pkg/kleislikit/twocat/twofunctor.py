import itertools
import logging
from typing import Dict, List, Mapping, Optional

from ..config import EngineConfig, resolve
from ..exceptions import StructuralError, UnknownCellError
from ..fincat import Functor, iter_functors
from ..report import ValidationReport
from .twocategory import Fin2Category, scalar_cell, scalar_extension

logger = logging.getLogger(__name__)


class TwoFunctor:
    """A strict 2-functor between finite 2-categories."""

    def __init__(
        self,
        source: Fin2Category,
        target: Fin2Category,
        object_map: Mapping[str, str],
        onecell_map: Mapping[str, str],
        twocell_map: Mapping[str, str],
        name: str = "",
    ) -> None:
        self.source = source
        self.target = target
        self.object_map: Dict[str, str] = {k: object_map[k] for k in sorted(object_map)}
        self.onecell_map: Dict[str, str] = {k: onecell_map[k] for k in sorted(onecell_map)}
        self.twocell_map: Dict[str, str] = {k: twocell_map[k] for k in sorted(twocell_map)}
        self.name = name

    def obj(self, x: str) -> str:
        try:
            return self.object_map[x]
        except KeyError:
            raise UnknownCellError(f"2-functor {self.name} undefined on object {x!r}")

    def one(self, f: str) -> str:
        try:
            return self.onecell_map[f]
        except KeyError:
            raise UnknownCellError(f"2-functor {self.name} undefined on 1-cell {f!r}")

    def two(self, a: str) -> str:
        try:
            return self.twocell_map[a]
        except KeyError:
            raise UnknownCellError(f"2-functor {self.name} undefined on 2-cell {a!r}")

    def then(self, other: "TwoFunctor") -> "TwoFunctor":
        """This 2-functor followed by ``other``."""
        if self.target != other.source:
            raise StructuralError("2-functors are not composable")
        name = f"{other.name}{self.name}" if self.name and other.name else ""
        return TwoFunctor(
            self.source,
            other.target,
            {x: other.obj(y) for x, y in self.object_map.items()},
            {f: other.one(g) for f, g in self.onecell_map.items()},
            {a: other.two(b) for a, b in self.twocell_map.items()},
            name=name,
        )

    def underlying(self) -> Functor:
        return Functor(self.source.underlying_category(), self.target.underlying_category(),
                       self.object_map, self.onecell_map, name=self.name)

    def _key(self):
        return (self.source, self.target, tuple(self.object_map.items()),
                tuple(self.onecell_map.items()), tuple(self.twocell_map.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoFunctor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<TwoFunctor {self.name} {self.source!r} -> {self.target!r}>"


def identity_twofunctor(c: Fin2Category) -> TwoFunctor:
    return TwoFunctor(c, c, {x: x for x in c.objects}, {f: f for f in c.onecells},
                      {a: a for a in c.twocells}, name="1")


def check_twofunctor(f: TwoFunctor) -> ValidationReport:
    """Strict preservation of boundaries, identities, composites and whiskers."""
    report = ValidationReport(subject=f.name or "2-functor")
    c, d = f.source, f.target
    for x in c.objects:
        if f.object_map.get(x) not in d.identity_1:
            report.add_structural("object not mapped to an object", object=x)
    for g in c.onecells:
        if f.onecell_map.get(g) not in d.onecells:
            report.add_structural("1-cell not mapped to a 1-cell", onecell=g)
    for a in c.twocells:
        if f.twocell_map.get(a) not in d.twocells:
            report.add_structural("2-cell not mapped to a 2-cell", twocell=a)
    if report.structural:
        return report

    for g, (x, y) in c.onecells.items():
        if d.onecells[f.one(g)] != (f.obj(x), f.obj(y)):
            report.add_violation("onecell_boundary", onecell=g)
    for a, (g, h) in c.twocells.items():
        if d.twocells[f.two(a)] != (f.one(g), f.one(h)):
            report.add_violation("twocell_boundary", twocell=a)
    if report.violations:
        return report

    for x in c.objects:
        if f.one(c.id1(x)) != d.id1(f.obj(x)):
            report.add_violation("onecell_identity", object=x)
    for g in c.onecells:
        if f.two(c.id2(g)) != d.id2(f.one(g)):
            report.add_violation("twocell_identity", onecell=g)
    for (g, h), gh in c.compose_1.items():
        if d.then1(f.one(g), f.one(h)) != f.one(gh):
            report.add_violation("onecell_composition", pair=[g, h])
    for (a, b), ab in c.vcompose.items():
        if d.vcomp(f.two(a), f.two(b)) != f.two(ab):
            report.add_violation("vertical_composition", pair=[a, b])
    for (g, a), ga in c.lwhisker.items():
        if d.lwhisk(f.one(g), f.two(a)) != f.two(ga):
            report.add_violation("lwhisker", onecell=g, twocell=a)
    for (a, g), ag in c.rwhisker.items():
        if d.rwhisk(f.two(a), f.one(g)) != f.two(ag):
            report.add_violation("rwhisker", onecell=g, twocell=a)
    return report


def graded_functor(functor: Functor, order: int) -> TwoFunctor:
    """Lift ``functor`` to the scalar extensions of its source and target, keeping labels."""
    source = scalar_extension(functor.source, order)
    target = scalar_extension(functor.target, order)
    return TwoFunctor(
        source,
        target,
        functor.object_map,
        functor.morphism_map,
        {scalar_cell(g, k): scalar_cell(functor.mor(g), k)
         for g in functor.source.morphisms for k in range(order)},
        name=functor.name,
    )


def enumerate_twofunctors(c: Fin2Category, d: Fin2Category,
                          config: Optional[EngineConfig] = None) -> List[TwoFunctor]:
    """
    Every strict 2-functor ``c -> d``.

    Underlying functors are enumerated first; for each, non-identity 2-cells
    range over the 2-cells of ``d`` between the image 1-cells.

    Raises:
        SizeGuardError: If the object maps or some 2-cell assignment space exceed the guard.
    """
    cfg = resolve(config)
    identities = set(c.identity_2.values())
    free_cells = [a for a in c.twocells if a not in identities]
    results: List[TwoFunctor] = []
    for base in iter_functors(c.underlying_category(), d.underlying_category(), cfg):
        candidates = [
            d.twocells_between(base.mor(c.dom(a)), base.mor(c.cod(a))) for a in free_cells
        ]
        space = 1
        for options in candidates:
            space *= len(options)
        cfg.check_guard(space, "2-cell assignments")
        fixed = {c.id2(g): d.id2(base.mor(g)) for g in c.onecells}
        for choice in itertools.product(*candidates):
            twocell_map = dict(fixed)
            twocell_map.update(zip(free_cells, choice))
            candidate = TwoFunctor(c, d, base.object_map, base.morphism_map, twocell_map)
            if check_twofunctor(candidate).ok:
                results.append(candidate)
    logger.debug("enumerated %d 2-functors %s -> %s", len(results), c.name, d.name)
    return results
