import logging
from typing import Dict, Mapping, Optional

from ..exceptions import StructuralError, UnknownCellError
from ..report import ValidationReport
from .category import FinCategory

logger = logging.getLogger(__name__)


class Functor:
    """A functor between finite categories, given by its object and morphism maps."""

    def __init__(
        self,
        source: FinCategory,
        target: FinCategory,
        object_map: Mapping[str, str],
        morphism_map: Mapping[str, str],
        name: str = "",
    ) -> None:
        self.source = source
        self.target = target
        self.object_map: Dict[str, str] = {k: object_map[k] for k in sorted(object_map)}
        self.morphism_map: Dict[str, str] = {k: morphism_map[k] for k in sorted(morphism_map)}
        self.name = name

    def obj(self, x: str) -> str:
        try:
            return self.object_map[x]
        except KeyError:
            raise UnknownCellError(f"Functor {self.name or ''} undefined on object {x!r}")

    def mor(self, f: str) -> str:
        try:
            return self.morphism_map[f]
        except KeyError:
            raise UnknownCellError(f"Functor {self.name or ''} undefined on morphism {f!r}")

    def then(self, other: "Functor") -> "Functor":
        """This functor followed by ``other``."""
        if self.target != other.source:
            raise StructuralError("Functors are not composable")
        return Functor(
            self.source,
            other.target,
            {x: other.obj(y) for x, y in self.object_map.items()},
            {f: other.mor(g) for f, g in self.morphism_map.items()},
        )

    def _key(self):
        return (self.source, self.target, tuple(self.object_map.items()),
                tuple(self.morphism_map.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<Functor {self.name or ''} {self.source!r} -> {self.target!r}>"


class NatTrans:
    """A natural transformation ``source => target`` given by its components."""

    def __init__(self, source: Functor, target: Functor, components: Mapping[str, str],
                 name: str = "") -> None:
        self.source = source
        self.target = target
        self.components: Dict[str, str] = {k: components[k] for k in sorted(components)}
        self.name = name

    def __getitem__(self, x: str) -> str:
        try:
            return self.components[x]
        except KeyError:
            raise UnknownCellError(f"Transformation {self.name or ''} has no component at {x!r}")

    def _key(self):
        return (self.source, self.target, tuple(self.components.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<NatTrans {self.name or ''} {self.components}>"


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.morphisms}, name="id")


def compose_functors(g: Functor, f: Functor) -> Functor:
    """Classical composite g after f."""
    return f.then(g)


def check_functor(f: Functor) -> ValidationReport:
    report = ValidationReport(subject=f.name or "functor")
    c, d = f.source, f.target
    for x in c.objects:
        if x not in f.object_map:
            report.add_structural("object not mapped", object=x)
        elif f.object_map[x] not in d.identities:
            report.add_structural("object image unknown", object=x, image=f.object_map[x])
    for m in c.morphisms:
        if m not in f.morphism_map:
            report.add_structural("morphism not mapped", morphism=m)
        elif f.morphism_map[m] not in d.morphisms:
            report.add_structural("morphism image unknown", morphism=m, image=f.morphism_map[m])
    if report.structural:
        return report

    for m, (s, t) in c.morphisms.items():
        if d.morphisms[f.morphism_map[m]] != (f.object_map[s], f.object_map[t]):
            report.add_violation("endpoints", morphism=m)
    for x in c.objects:
        if f.morphism_map[c.identities[x]] != d.identities[f.object_map[x]]:
            report.add_violation("identity", object=x)
    if report.violations:
        return report
    for (a, b), ab in c.compose_table.items():
        if d.compose_table.get((f.morphism_map[a], f.morphism_map[b])) != f.morphism_map[ab]:
            report.add_violation("composition", pair=[a, b])
    return report


def _hom_image_counts(f: Functor):
    c = f.source
    for x in c.objects:
        for y in c.objects:
            homs = c.hom(x, y)
            images = {f.mor(m) for m in homs}
            yield x, y, homs, images


def is_faithful(f: Functor) -> bool:
    return all(len(images) == len(homs) for _, _, homs, images in _hom_image_counts(f))


def is_full(f: Functor) -> bool:
    d = f.target
    return all(
        len(images) == len(d.hom(f.obj(x), f.obj(y)))
        for x, y, _, images in _hom_image_counts(f)
    )


def is_fully_faithful(f: Functor) -> bool:
    return is_faithful(f) and is_full(f)


def is_bijective_on_objects(f: Functor) -> bool:
    images = [f.obj(x) for x in f.source.objects]
    return len(set(images)) == len(images) and set(images) == set(f.target.objects)


def is_isomorphism(f: Functor) -> bool:
    return is_bijective_on_objects(f) and is_fully_faithful(f)


def is_essentially_surjective(f: Functor) -> bool:
    d = f.target
    images = {f.obj(x) for x in f.source.objects}
    for y in d.objects:
        if y in images:
            continue
        if not any(d.is_iso(m) for z in images for m in d.hom(z, y)):
            return False
    return True


def is_equivalence(f: Functor) -> bool:
    """Fully faithful and essentially surjective."""
    return is_fully_faithful(f) and is_essentially_surjective(f)


def inverse_functor(f: Functor) -> Optional[Functor]:
    if not is_isomorphism(f):
        return None
    return Functor(
        f.target,
        f.source,
        {y: x for x, y in f.object_map.items()},
        {g: m for m, g in f.morphism_map.items()},
    )


def check_natural(alpha: NatTrans) -> ValidationReport:
    report = ValidationReport(subject=alpha.name or "natural transformation")
    f, g = alpha.source, alpha.target
    if f.source != g.source or f.target != g.target:
        report.add_structural("functors are not parallel")
        return report
    d = f.target
    for x in f.source.objects:
        comp = alpha.components.get(x)
        if comp is None:
            report.add_structural("missing component", object=x)
        elif d.morphisms.get(comp) != (f.obj(x), g.obj(x)):
            report.add_structural("component has wrong type", object=x, component=comp)
    if report.structural:
        return report
    for m, (s, t) in f.source.morphisms.items():
        if d.then(f.mor(m), alpha[t]) != d.then(alpha[s], g.mor(m)):
            report.add_violation("naturality", morphism=m)
    return report


def identity_nat(f: Functor) -> NatTrans:
    return NatTrans(f, f, {x: f.target.identity(f.obj(x)) for x in f.source.objects})


def nat_then(alpha: NatTrans, beta: NatTrans) -> NatTrans:
    """Vertical composite: alpha, then beta."""
    d = alpha.source.target
    return NatTrans(
        alpha.source,
        beta.target,
        {x: d.then(alpha[x], beta[x]) for x in alpha.source.source.objects},
    )


def postwhisker(alpha: NatTrans, h: Functor) -> NatTrans:
    """H alpha: apply ``h`` after the transformation."""
    return NatTrans(
        alpha.source.then(h),
        alpha.target.then(h),
        {x: h.mor(c) for x, c in alpha.components.items()},
    )


def prewhisker(alpha: NatTrans, h: Functor) -> NatTrans:
    """alpha H: precompose the transformation with ``h``."""
    return NatTrans(
        h.then(alpha.source),
        h.then(alpha.target),
        {x: alpha[h.obj(x)] for x in h.source.objects},
    )
