import logging
from collections import defaultdict
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from ..exceptions import StructuralError, UnknownCellError
from ..fincat import FinCategory, tag, validate_category
from ..report import ValidationReport

logger = logging.getLogger(__name__)


class Fin2Category:
    """
    A finite strict 2-category presented by tables.

    1-cell composition is diagrammatic (``then1(f, g)`` is f, then g), as is
    vertical composition of 2-cells. ``lwhisker[(f, a)]`` is ``f`` followed by the
    2-cell ``a``; ``rwhisker[(a, g)]`` is ``a`` followed by ``g``. Invertible
    2-cells are listed in ``inverses``.
    """

    def __init__(
        self,
        objects: Iterable[str],
        onecells: Mapping[str, Tuple[str, str]],
        twocells: Mapping[str, Tuple[str, str]],
        identity_1: Mapping[str, str],
        identity_2: Mapping[str, str],
        compose_1: Mapping[Tuple[str, str], str],
        vcompose: Mapping[Tuple[str, str], str],
        lwhisker: Mapping[Tuple[str, str], str],
        rwhisker: Mapping[Tuple[str, str], str],
        inverses: Optional[Mapping[str, str]] = None,
        name: str = "",
    ) -> None:
        self.objects: Tuple[str, ...] = tuple(sorted(set(objects)))
        self.onecells = {k: tuple(onecells[k]) for k in sorted(onecells)}
        self.twocells = {k: tuple(twocells[k]) for k in sorted(twocells)}
        self.identity_1 = {k: identity_1[k] for k in sorted(identity_1)}
        self.identity_2 = {k: identity_2[k] for k in sorted(identity_2)}
        self.compose_1 = {k: compose_1[k] for k in sorted(compose_1)}
        self.vcompose = {k: vcompose[k] for k in sorted(vcompose)}
        self.lwhisker = {k: lwhisker[k] for k in sorted(lwhisker)}
        self.rwhisker = {k: rwhisker[k] for k in sorted(rwhisker)}
        self.inverses = {k: inverses[k] for k in sorted(inverses or {})}
        self.name = name
        self._key = None
        self._between: Optional[Dict[Tuple[str, str], Tuple[str, ...]]] = None
        self._homs: Optional[Dict[Tuple[str, str], Tuple[str, ...]]] = None

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        onecells: Mapping[str, Tuple[str, str]],
        twocells: Mapping[str, Tuple[str, str]],
        identity_1: Mapping[str, str],
        identity_2: Mapping[str, str],
        compose_fn: Callable[[str, str], str],
        vcompose_fn: Callable[[str, str], str],
        lwhisker_fn: Callable[[str, str], str],
        rwhisker_fn: Callable[[str, str], str],
        inverse_fn: Callable[[str], Optional[str]],
        name: str = "",
    ) -> "Fin2Category":
        """Fill every table by calling the given functions on all composable arguments."""
        by_source: Dict[str, List[str]] = defaultdict(list)
        for f, (s, _) in onecells.items():
            by_source[s].append(f)
        by_dom: Dict[str, List[str]] = defaultdict(list)
        by_object: Dict[str, List[str]] = defaultdict(list)
        by_target_object: Dict[str, List[str]] = defaultdict(list)
        for a, (f, _) in twocells.items():
            by_dom[f].append(a)
            by_object[onecells[f][0]].append(a)
            by_target_object[onecells[f][1]].append(a)

        compose = {}
        for f, (_, t) in onecells.items():
            for g in by_source.get(t, ()):
                compose[(f, g)] = compose_fn(f, g)
        vcompose = {}
        for a, (_, g) in twocells.items():
            for b in by_dom.get(g, ()):
                vcompose[(a, b)] = vcompose_fn(a, b)
        lwhisker = {}
        rwhisker = {}
        for f, (s, t) in onecells.items():
            for a in by_object.get(t, ()):
                lwhisker[(f, a)] = lwhisker_fn(f, a)
            for a in by_target_object.get(s, ()):
                rwhisker[(a, f)] = rwhisker_fn(a, f)
        inverses = {}
        for a in twocells:
            inv = inverse_fn(a)
            if inv is not None:
                inverses[a] = inv
        return cls(objects, onecells, twocells, identity_1, identity_2, compose, vcompose,
                   lwhisker, rwhisker, inverses, name)

    def _key_tuple(self):
        if self._key is None:
            self._key = (
                self.objects,
                tuple(self.onecells.items()),
                tuple(self.twocells.items()),
                tuple(self.identity_1.items()),
                tuple(self.identity_2.items()),
                tuple(self.compose_1.items()),
                tuple(self.vcompose.items()),
                tuple(self.lwhisker.items()),
                tuple(self.rwhisker.items()),
                tuple(self.inverses.items()),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fin2Category):
            return NotImplemented
        return self._key_tuple() == other._key_tuple()

    def __hash__(self) -> int:
        return hash(self._key_tuple())

    def __repr__(self) -> str:
        return (f"<{self.name or 'Fin2Category'}: {len(self.objects)} objects, "
                f"{len(self.onecells)} 1-cells, {len(self.twocells)} 2-cells>")

    def ends1(self, f: str) -> Tuple[str, str]:
        try:
            return self.onecells[f]
        except KeyError:
            raise UnknownCellError(f"Unknown 1-cell {f!r}")

    def ends2(self, a: str) -> Tuple[str, str]:
        try:
            return self.twocells[a]
        except KeyError:
            raise UnknownCellError(f"Unknown 2-cell {a!r}")

    def dom(self, a: str) -> str:
        return self.ends2(a)[0]

    def cod(self, a: str) -> str:
        return self.ends2(a)[1]

    def id1(self, x: str) -> str:
        try:
            return self.identity_1[x]
        except KeyError:
            raise UnknownCellError(f"Unknown object {x!r}")

    def id2(self, f: str) -> str:
        try:
            return self.identity_2[f]
        except KeyError:
            raise UnknownCellError(f"Unknown 1-cell {f!r}")

    def then1(self, *fs: str) -> str:
        if not fs:
            raise StructuralError("then1() needs at least one 1-cell")
        result = fs[0]
        self.ends1(result)
        for g in fs[1:]:
            composite = self.compose_1.get((result, g))
            if composite is None:
                raise UnknownCellError(f"1-cells {result!r} and {g!r} are not composable")
            result = composite
        return result

    def vcomp(self, *cells: str) -> str:
        if not cells:
            raise StructuralError("vcomp() needs at least one 2-cell")
        result = cells[0]
        self.ends2(result)
        for b in cells[1:]:
            composite = self.vcompose.get((result, b))
            if composite is None:
                raise UnknownCellError(f"2-cells {result!r} and {b!r} are not composable")
            result = composite
        return result

    def lwhisk(self, f: str, a: str) -> str:
        try:
            return self.lwhisker[(f, a)]
        except KeyError:
            raise UnknownCellError(f"Cannot whisker 1-cell {f!r} before 2-cell {a!r}")

    def rwhisk(self, a: str, g: str) -> str:
        try:
            return self.rwhisker[(a, g)]
        except KeyError:
            raise UnknownCellError(f"Cannot whisker 2-cell {a!r} before 1-cell {g!r}")

    def hcomp(self, a: str, b: str) -> str:
        """Horizontal composite, left whisker first: ``(a ; g) . (f' ; b)``."""
        f2 = self.cod(a)
        g = self.dom(b)
        return self.vcomp(self.rwhisk(a, g), self.lwhisk(f2, b))

    def inverse(self, a: str) -> Optional[str]:
        return self.inverses.get(a)

    def require_inverse(self, a: str) -> str:
        inv = self.inverses.get(a)
        if inv is None:
            raise StructuralError(f"2-cell {a!r} has no inverse witness")
        return inv

    def is_invertible(self, a: str) -> bool:
        return a in self.inverses

    def hom1(self, x: str, y: str) -> Tuple[str, ...]:
        if self._homs is None:
            homs: Dict[Tuple[str, str], List[str]] = defaultdict(list)
            for f, ends in self.onecells.items():
                homs[ends].append(f)
            self._homs = {k: tuple(v) for k, v in homs.items()}
        return self._homs.get((x, y), ())

    def twocells_between(self, f: str, g: str) -> Tuple[str, ...]:
        if self._between is None:
            between: Dict[Tuple[str, str], List[str]] = defaultdict(list)
            for a, ends in self.twocells.items():
                between[ends].append(a)
            self._between = {k: tuple(v) for k, v in between.items()}
        return self._between.get((f, g), ())

    def invertible_twocells_between(self, f: str, g: str) -> Tuple[str, ...]:
        return tuple(a for a in self.twocells_between(f, g) if a in self.inverses)

    def hom_category(self, x: str, y: str) -> FinCategory:
        """The hom-category ``(x, y)``: 1-cells and 2-cells under vertical composition."""
        objects = self.hom1(x, y)
        morphisms = {a: ends for a, ends in self.twocells.items() if ends[0] in objects}
        compose = {k: v for k, v in self.vcompose.items() if k[0] in morphisms}
        return FinCategory(objects, morphisms, {f: self.identity_2[f] for f in objects}, compose,
                           name=f"{self.name}({x},{y})")

    def underlying_category(self) -> FinCategory:
        return FinCategory(self.objects, self.onecells, self.identity_1, self.compose_1,
                           name=f"{self.name}_1")


def validate_2category(c: Fin2Category) -> ValidationReport:
    """
    Check every strict 2-category law on the tables.

    Covers the category laws for 1-cells and for vertical composition, typing
    and functoriality of whiskering, associativity and unitality of whiskering
    with respect to 1-cell composition, middle-four interchange, and the
    inverse witnesses.
    """
    report = ValidationReport(subject=c.name or "2-category")
    report.merge(validate_category(c.underlying_category()), "1-cells")
    for f, ends in c.twocells.items():
        if ends[0] not in c.onecells or ends[1] not in c.onecells:
            report.add_structural("2-cell boundary is not a 1-cell", twocell=f)
        elif c.onecells[ends[0]] != c.onecells[ends[1]]:
            report.add_structural("2-cell boundary is not parallel", twocell=f)
    for f in c.onecells:
        i = c.identity_2.get(f)
        if i is None or c.twocells.get(i) != (f, f):
            report.add_structural("1-cell lacks a well-typed identity 2-cell", onecell=f)
    for table_name, table in (("lwhisker", c.lwhisker), ("rwhisker", c.rwhisker),
                              ("vcompose", c.vcompose)):
        for key, value in table.items():
            if value not in c.twocells:
                report.add_structural(f"{table_name} entry is not a 2-cell", key=list(key))
    if report.structural:
        return report

    for x in c.objects:
        for y in c.objects:
            report.merge(validate_category(c.hom_category(x, y)), f"hom({x},{y})")
    if not report.ok:
        return report

    outgoing: Dict[str, List[str]] = defaultdict(list)
    incoming: Dict[str, List[str]] = defaultdict(list)
    for f, (x, y) in c.onecells.items():
        outgoing[x].append(f)
        incoming[y].append(f)
    cells_from: Dict[str, List[str]] = defaultdict(list)
    for a, (f, _) in c.twocells.items():
        cells_from[c.onecells[f][0]].append(a)
    for (f, a), fa in c.lwhisker.items():
        g, g2 = c.twocells[a]
        if c.twocells[fa] != (c.then1(f, g), c.then1(f, g2)):
            report.add_violation("lwhisker_typing", onecell=f, twocell=a)
    for (a, g), ag in c.rwhisker.items():
        f, f2 = c.twocells[a]
        if c.twocells[ag] != (c.then1(f, g), c.then1(f2, g)):
            report.add_violation("rwhisker_typing", onecell=g, twocell=a)
    if report.violations:
        return report

    for f, (x, y) in c.onecells.items():
        for g in outgoing[y]:
            if c.lwhisk(f, c.id2(g)) != c.id2(c.then1(f, g)):
                report.add_violation("lwhisker_identity", onecell=f, target=g)
            if c.rwhisk(c.id2(f), g) != c.id2(c.then1(f, g)):
                report.add_violation("rwhisker_identity", onecell=g, target=f)
    for (a, b), ab in c.vcompose.items():
        x, y = c.onecells[c.twocells[a][0]]
        for f in incoming[x]:
            if c.lwhisk(f, ab) != c.vcomp(c.lwhisk(f, a), c.lwhisk(f, b)):
                report.add_violation("lwhisker_functoriality", onecell=f, pair=[a, b])
        for g in outgoing[y]:
            if c.rwhisk(ab, g) != c.vcomp(c.rwhisk(a, g), c.rwhisk(b, g)):
                report.add_violation("rwhisker_functoriality", onecell=g, pair=[a, b])
    for a, (f1, f2) in c.twocells.items():
        x, y = c.onecells[f1]
        if c.lwhisk(c.id1(x), a) != a:
            report.add_violation("lwhisker_unit", twocell=a)
        if c.rwhisk(a, c.id1(y)) != a:
            report.add_violation("rwhisker_unit", twocell=a)
        for f in incoming[x]:
            for e in incoming[c.onecells[f][0]]:
                if c.lwhisk(e, c.lwhisk(f, a)) != c.lwhisk(c.then1(e, f), a):
                    report.add_violation("lwhisker_associativity", twocell=a, onecells=[e, f])
            for g in outgoing[y]:
                if c.rwhisk(c.lwhisk(f, a), g) != c.lwhisk(f, c.rwhisk(a, g)):
                    report.add_violation("whisker_middle", twocell=a, onecells=[f, g])
        for g in outgoing[y]:
            for k in outgoing[c.onecells[g][1]]:
                if c.rwhisk(c.rwhisk(a, g), k) != c.rwhisk(a, c.then1(g, k)):
                    report.add_violation("rwhisker_associativity", twocell=a, onecells=[g, k])
        for b in cells_from[y]:
            g1, g2 = c.twocells[b]
            left_first = c.vcomp(c.rwhisk(a, g1), c.lwhisk(f2, b))
            right_first = c.vcomp(c.lwhisk(f1, b), c.rwhisk(a, g2))
            if left_first != right_first:
                report.add_violation("interchange", twocells=[a, b])

    for a, inv in c.inverses.items():
        if a not in c.twocells or inv not in c.twocells:
            report.add_structural("inverse witness uses unknown 2-cell", twocell=a)
            continue
        f, g = c.twocells[a]
        if c.twocells[inv] != (g, f):
            report.add_violation("inverse_typing", twocell=a)
        elif c.vcomp(a, inv) != c.id2(f) or c.vcomp(inv, a) != c.id2(g):
            report.add_violation("inverse", twocell=a)
    return report


def scalar_cell(f: str, k: int) -> str:
    return tag("sc", f, str(k))


def scalar_extension(c: FinCategory, order: int, name: str = "") -> Fin2Category:
    """
    Give every 1-cell of ``c`` the cyclic group of order ``order`` as its
    endo-2-cells; vertical composition adds labels and whiskering keeps them.

    ``order == 1`` is the locally discrete 2-category on ``c``.
    """
    if order < 1:
        raise StructuralError("order must be positive")
    twocells = {}
    label = {}
    for f in c.morphisms:
        for k in range(order):
            cell = scalar_cell(f, k)
            twocells[cell] = (f, f)
            label[cell] = (f, k)

    def vcompose(a: str, b: str) -> str:
        f, k = label[a]
        return scalar_cell(f, (k + label[b][1]) % order)

    def lwhisk(f: str, a: str) -> str:
        g, k = label[a]
        return scalar_cell(c.then(f, g), k)

    def rwhisk(a: str, g: str) -> str:
        f, k = label[a]
        return scalar_cell(c.then(f, g), k)

    def inverse(a: str) -> str:
        f, k = label[a]
        return scalar_cell(f, (-k) % order)

    return Fin2Category.build(
        c.objects, c.morphisms, twocells, c.identities,
        {f: scalar_cell(f, 0) for f in c.morphisms},
        c.then, vcompose, lwhisk, rwhisk, inverse,
        name=name or (f"ld({c.name})" if order == 1 else f"{c.name}xZ{order}"),
    )


def locally_discrete(c: FinCategory) -> Fin2Category:
    """The 2-category on ``c`` with identity 2-cells only."""
    return scalar_extension(c, 1)


def scalar_order(c: Fin2Category) -> int:
    """Number of 2-cells on each 1-cell when every hom is a single cyclic group."""
    counts = {len(c.twocells_between(f, f)) for f in c.onecells}
    return counts.pop() if len(counts) == 1 else 0
