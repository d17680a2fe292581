import logging
from collections import defaultdict
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from ..exceptions import StructuralError, UnknownCellError
from ..report import ValidationReport

logger = logging.getLogger(__name__)


class FinCategory:
    """
    A finite category given by its composition table.

    Composition is diagrammatic throughout: ``compose_table[(f, g)]`` is
    "f then g", defined when ``tgt(f) == src(g)``. Tables are stored sorted by
    id so equality is table identity and iteration order is lexicographic.

    Construction does not validate; call :func:`validate_category`.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Mapping[str, Tuple[str, str]],
        identities: Mapping[str, str],
        compose: Mapping[Tuple[str, str], str],
        name: str = "",
    ) -> None:
        self.objects: Tuple[str, ...] = tuple(sorted(set(objects)))
        self.morphisms: Dict[str, Tuple[str, str]] = {
            m: tuple(morphisms[m]) for m in sorted(morphisms)
        }
        self.identities: Dict[str, str] = {x: identities[x] for x in sorted(identities)}
        self.compose_table: Dict[Tuple[str, str], str] = {
            k: compose[k] for k in sorted(compose)
        }
        self.name = name
        self._homs: Optional[Dict[Tuple[str, str], Tuple[str, ...]]] = None
        self._key = None

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        morphisms: Mapping[str, Tuple[str, str]],
        identities: Mapping[str, str],
        compose_fn: Callable[[str, str], str],
        name: str = "",
    ) -> "FinCategory":
        """Fill the composition table by calling ``compose_fn(f, g)`` on every composable pair."""
        by_source: Dict[str, List[str]] = defaultdict(list)
        for m, (s, _) in morphisms.items():
            by_source[s].append(m)
        compose = {}
        for f, (_, t) in morphisms.items():
            for g in by_source.get(t, ()):
                compose[(f, g)] = compose_fn(f, g)
        return cls(objects, morphisms, identities, compose, name)

    def _key_tuple(self):
        if self._key is None:
            self._key = (
                self.objects,
                tuple(self.morphisms.items()),
                tuple(self.identities.items()),
                tuple(self.compose_table.items()),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._key_tuple() == other._key_tuple()

    def __hash__(self) -> int:
        return hash(self._key_tuple())

    def __repr__(self) -> str:
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def src(self, f: str) -> str:
        try:
            return self.morphisms[f][0]
        except KeyError:
            raise UnknownCellError(f"Unknown morphism {f!r}")

    def tgt(self, f: str) -> str:
        try:
            return self.morphisms[f][1]
        except KeyError:
            raise UnknownCellError(f"Unknown morphism {f!r}")

    def identity(self, obj: str) -> str:
        try:
            return self.identities[obj]
        except KeyError:
            raise UnknownCellError(f"Unknown object {obj!r}")

    def is_identity(self, f: str) -> bool:
        return f in self.morphisms and self.identities.get(self.src(f)) == f

    def hom(self, x: str, y: str) -> Tuple[str, ...]:
        if self._homs is None:
            homs: Dict[Tuple[str, str], List[str]] = defaultdict(list)
            for m, st in self.morphisms.items():
                homs[st].append(m)
            self._homs = {k: tuple(v) for k, v in homs.items()}
        return self._homs.get((x, y), ())

    def hom_sizes(self) -> Dict[Tuple[str, str], int]:
        return {(x, y): len(self.hom(x, y)) for x in self.objects for y in self.objects}

    def then(self, *fs: str) -> str:
        """Diagrammatic composite: ``then(f, g, h)`` is f, then g, then h."""
        if not fs:
            raise StructuralError("then() needs at least one morphism")
        result = fs[0]
        if result not in self.morphisms:
            raise UnknownCellError(f"Unknown morphism {result!r}")
        for g in fs[1:]:
            composite = self.compose_table.get((result, g))
            if composite is None:
                raise UnknownCellError(f"No composite for ({result!r}, {g!r})")
            result = composite
        return result

    def comp(self, g: str, f: str) -> str:
        """Classical order: g after f."""
        return self.then(f, g)

    def inverse(self, f: str) -> Optional[str]:
        x, y = self.src(f), self.tgt(f)
        for g in self.hom(y, x):
            if self.then(f, g) == self.identity(x) and self.then(g, f) == self.identity(y):
                return g
        return None

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def subcategory(self, morphism_ids: Iterable[str], name: str = "") -> "FinCategory":
        """Restrict to the given morphisms plus all identities; the set must be closed."""
        keep = set(morphism_ids) | set(self.identities.values())
        compose = {}
        for (f, g), h in self.compose_table.items():
            if f in keep and g in keep:
                if h not in keep:
                    raise StructuralError(f"Subcategory not closed: {f!r};{g!r} = {h!r}")
                compose[(f, g)] = h
        morphisms = {m: self.morphisms[m] for m in keep}
        return FinCategory(self.objects, morphisms, self.identities, compose, name)

    def full_subcategory(self, objects: Iterable[str], name: str = "") -> "FinCategory":
        objs = set(objects)
        morphisms = {m: st for m, st in self.morphisms.items() if st[0] in objs and st[1] in objs}
        compose = {
            k: v for k, v in self.compose_table.items() if k[0] in morphisms and k[1] in morphisms
        }
        identities = {x: self.identities[x] for x in objs}
        return FinCategory(objs, morphisms, identities, compose, name)

    def opposite(self) -> "FinCategory":
        morphisms = {m: (t, s) for m, (s, t) in self.morphisms.items()}
        compose = {(g, f): h for (f, g), h in self.compose_table.items()}
        return FinCategory(self.objects, morphisms, self.identities, compose,
                           f"{self.name}^op" if self.name else "")


def validate_category(c: FinCategory) -> ValidationReport:
    """
    Check that a table presentation is a category.

    Dangling ids and a composition table that is not total exactly on
    composable pairs are structural errors; identity and associativity
    failures are law violations.

    Args:
        c: The candidate category.

    Returns:
        ValidationReport: Empty iff ``c`` is a category.

    Example:
        >>> validate_category(walking_arrow()).ok
        True
    """
    report = ValidationReport(subject=c.name or "category")
    objects = set(c.objects)

    for m, (s, t) in c.morphisms.items():
        if s not in objects or t not in objects:
            report.add_structural("morphism endpoint is not an object", morphism=m)

    for x in c.objects:
        i = c.identities.get(x)
        if i is None:
            report.add_structural("object has no identity", object=x)
        elif i not in c.morphisms:
            report.add_structural("identity is not a morphism", object=x, morphism=i)
        elif c.morphisms[i] != (x, x):
            report.add_structural("identity has wrong endpoints", object=x, morphism=i)
    for x in c.identities:
        if x not in objects:
            report.add_structural("identity for unknown object", object=x)

    for (f, g), h in c.compose_table.items():
        if f not in c.morphisms or g not in c.morphisms or h not in c.morphisms:
            report.add_structural("composition entry uses unknown id", pair=[f, g], composite=h)
        elif c.morphisms[f][1] != c.morphisms[g][0]:
            report.add_structural("composition entry for non-composable pair", pair=[f, g])
        elif c.morphisms[h] != (c.morphisms[f][0], c.morphisms[g][1]):
            report.add_structural("composite has wrong endpoints", pair=[f, g], composite=h)
    by_source: Dict[str, List[str]] = defaultdict(list)
    for g, (s, _) in c.morphisms.items():
        by_source[s].append(g)
    for f, (_, t) in c.morphisms.items():
        for g in by_source.get(t, ()):
            if (f, g) not in c.compose_table:
                report.add_structural("composable pair missing from table", pair=[f, g])

    if report.structural:
        return report

    for f, (s, t) in c.morphisms.items():
        if c.compose_table[(c.identities[s], f)] != f:
            report.add_violation("left_identity", pair=[c.identities[s], f])
        if c.compose_table[(f, c.identities[t])] != f:
            report.add_violation("right_identity", pair=[f, c.identities[t]])

    non_identities = [m for m in c.morphisms if not c.is_identity(m)]
    for f in non_identities:
        for g in by_source.get(c.morphisms[f][1], ()):
            if c.is_identity(g):
                continue
            fg = c.compose_table[(f, g)]
            for h in by_source.get(c.morphisms[g][1], ()):
                if c.is_identity(h):
                    continue
                left = c.compose_table.get((fg, h))
                gh = c.compose_table[(g, h)]
                right = c.compose_table.get((f, gh))
                if left is None or right is None or left != right:
                    report.add_violation("associativity", triple=[f, g, h])
    return report
