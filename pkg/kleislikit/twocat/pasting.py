import json
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from ..config import EngineConfig, resolve
from ..exceptions import IllTypedPastingError, SerializationError, StructuralError
from .twocategory import Fin2Category

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cell2:
    cell: str


@dataclass(frozen=True)
class Id2:
    onecell: str


@dataclass(frozen=True)
class VComp:
    """``first`` then ``second``."""
    first: "PastingExpr"
    second: "PastingExpr"


@dataclass(frozen=True)
class LWhisk:
    """The 1-cell ``onecell`` followed by ``body``."""
    onecell: str
    body: "PastingExpr"


@dataclass(frozen=True)
class RWhisk:
    """``body`` followed by the 1-cell ``onecell``."""
    body: "PastingExpr"
    onecell: str


PastingExpr = Union[Cell2, Id2, VComp, LWhisk, RWhisk]


def vcomp_all(*exprs: PastingExpr) -> PastingExpr:
    """Left-nested vertical composite of one or more expressions."""
    if not exprs:
        raise StructuralError("vcomp_all() needs at least one expression")
    result = exprs[0]
    for e in exprs[1:]:
        result = VComp(result, e)
    return result


def boundary(c: Fin2Category, e: PastingExpr) -> Tuple[str, str]:
    """Source and target 1-cells of ``e``; raises on the first ill-typed node."""
    if isinstance(e, Cell2):
        if e.cell not in c.twocells:
            raise IllTypedPastingError(f"Unknown 2-cell {e.cell!r}", node=e)
        return c.twocells[e.cell]
    if isinstance(e, Id2):
        if e.onecell not in c.onecells:
            raise IllTypedPastingError(f"Unknown 1-cell {e.onecell!r}", node=e)
        return e.onecell, e.onecell
    if isinstance(e, VComp):
        f, g = boundary(c, e.first)
        g2, h = boundary(c, e.second)
        if g != g2:
            raise IllTypedPastingError(
                f"Vertical composite of {f!r}=>{g!r} with {g2!r}=>{h!r}", node=e)
        return f, h
    if isinstance(e, LWhisk):
        if e.onecell not in c.onecells:
            raise IllTypedPastingError(f"Unknown 1-cell {e.onecell!r}", node=e)
        g, h = boundary(c, e.body)
        if c.onecells[e.onecell][1] != c.onecells[g][0]:
            raise IllTypedPastingError(
                f"Cannot whisker {e.onecell!r} before a 2-cell on {g!r}", node=e)
        return c.then1(e.onecell, g), c.then1(e.onecell, h)
    if isinstance(e, RWhisk):
        if e.onecell not in c.onecells:
            raise IllTypedPastingError(f"Unknown 1-cell {e.onecell!r}", node=e)
        g, h = boundary(c, e.body)
        if c.onecells[g][1] != c.onecells[e.onecell][0]:
            raise IllTypedPastingError(
                f"Cannot whisker a 2-cell on {g!r} before {e.onecell!r}", node=e)
        return c.then1(g, e.onecell), c.then1(h, e.onecell)
    raise IllTypedPastingError(f"Not a pasting expression: {e!r}", node=e)


def _evaluate(c: Fin2Category, e: PastingExpr) -> str:
    if isinstance(e, Cell2):
        return e.cell
    if isinstance(e, Id2):
        return c.id2(e.onecell)
    if isinstance(e, VComp):
        return c.vcomp(_evaluate(c, e.first), _evaluate(c, e.second))
    if isinstance(e, LWhisk):
        return c.lwhisk(e.onecell, _evaluate(c, e.body))
    return c.rwhisk(_evaluate(c, e.body), e.onecell)


def eval_pasting(c: Fin2Category, e: PastingExpr, config: Optional[EngineConfig] = None) -> str:
    """
    The composite 2-cell denoted by ``e``.

    With ``debug_pasting`` set, the result is re-derived from
    ``reassociation_trials`` random rewrites of ``e`` and must agree each time.

    Raises:
        IllTypedPastingError: Naming the offending node.
        StructuralError: If a re-associated form evaluates differently.
    """
    boundary(c, e)
    result = _evaluate(c, e)
    cfg = resolve(config)
    if cfg.debug_pasting:
        rng = random.Random(cfg.seed)
        current = e
        for trial in range(cfg.reassociation_trials):
            current = reassociate(current, c, rng)
            other = _evaluate(c, current)
            if other != result:
                raise StructuralError(
                    f"pasting evaluation depends on bracketing: {result!r} vs {other!r} "
                    f"after {trial + 1} rewrites in {c.name}")
    return result


def pastings_agree(c: Fin2Category, lhs: PastingExpr, rhs: PastingExpr,
                   config: Optional[EngineConfig] = None) -> bool:
    if boundary(c, lhs) != boundary(c, rhs):
        raise IllTypedPastingError("Sides of a pasting equation are not parallel", node=rhs)
    return eval_pasting(c, lhs, config) == eval_pasting(c, rhs, config)


def _rewrites(c: Fin2Category, e: PastingExpr) -> List[PastingExpr]:
    """Every expression obtained from ``e`` by one sound rewrite at the root."""
    out: List[PastingExpr] = []
    if isinstance(e, VComp):
        if isinstance(e.first, VComp):
            out.append(VComp(e.first.first, VComp(e.first.second, e.second)))
        if isinstance(e.second, VComp):
            out.append(VComp(VComp(e.first, e.second.first), e.second.second))
        if isinstance(e.first, LWhisk) and isinstance(e.second, LWhisk) \
                and e.first.onecell == e.second.onecell:
            out.append(LWhisk(e.first.onecell, VComp(e.first.body, e.second.body)))
        if isinstance(e.first, RWhisk) and isinstance(e.second, RWhisk) \
                and e.first.onecell == e.second.onecell:
            out.append(RWhisk(VComp(e.first.body, e.second.body), e.first.onecell))
        if isinstance(e.first, RWhisk) and isinstance(e.second, LWhisk):
            a, g = e.first.body, e.first.onecell
            f2, b = e.second.onecell, e.second.body
            f1, f2_a = boundary(c, a)
            g1, g2 = boundary(c, b)
            if g1 == g and f2_a == f2:
                out.append(VComp(LWhisk(f1, b), RWhisk(a, g2)))
        if isinstance(e.first, Id2):
            out.append(e.second)
        if isinstance(e.second, Id2):
            out.append(e.first)
    elif isinstance(e, LWhisk):
        if isinstance(e.body, VComp):
            out.append(VComp(LWhisk(e.onecell, e.body.first), LWhisk(e.onecell, e.body.second)))
        if isinstance(e.body, LWhisk):
            out.append(LWhisk(c.then1(e.onecell, e.body.onecell), e.body.body))
        if isinstance(e.body, RWhisk):
            out.append(RWhisk(LWhisk(e.onecell, e.body.body), e.body.onecell))
        if isinstance(e.body, Id2):
            out.append(Id2(c.then1(e.onecell, e.body.onecell)))
    elif isinstance(e, RWhisk):
        if isinstance(e.body, VComp):
            out.append(VComp(RWhisk(e.body.first, e.onecell), RWhisk(e.body.second, e.onecell)))
        if isinstance(e.body, RWhisk):
            out.append(RWhisk(e.body.body, c.then1(e.body.onecell, e.onecell)))
        if isinstance(e.body, LWhisk):
            out.append(LWhisk(e.body.onecell, RWhisk(e.body.body, e.onecell)))
        if isinstance(e.body, Id2):
            out.append(Id2(c.then1(e.body.onecell, e.onecell)))
    return out


def _positions(e: PastingExpr,
               path: Tuple[int, ...] = ()) -> List[Tuple[Tuple[int, ...], PastingExpr]]:
    found = [(path, e)]
    if isinstance(e, VComp):
        found += _positions(e.first, path + (0,))
        found += _positions(e.second, path + (1,))
    elif isinstance(e, (LWhisk, RWhisk)):
        found += _positions(e.body, path + (0,))
    return found


def _replace(e: PastingExpr, path: Tuple[int, ...], new: PastingExpr) -> PastingExpr:
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(e, VComp):
        if head == 0:
            return VComp(_replace(e.first, rest, new), e.second)
        return VComp(e.first, _replace(e.second, rest, new))
    if isinstance(e, LWhisk):
        return LWhisk(e.onecell, _replace(e.body, rest, new))
    if isinstance(e, RWhisk):
        return RWhisk(_replace(e.body, rest, new), e.onecell)
    raise StructuralError("path leaves the expression tree")


def reassociate(e: PastingExpr, c: Fin2Category, rng: random.Random) -> PastingExpr:
    """
    Apply one random sound rewrite somewhere in ``e``.

    Rewrites are associativity of vertical composition, distribution of a
    whisker over a vertical composite (both ways), merging of nested whiskers,
    interchange, and insertion or removal of identities.
    """
    options: List[Tuple[Tuple[int, ...], PastingExpr]] = []
    for path, node in _positions(e):
        for rewritten in _rewrites(c, node):
            options.append((path, rewritten))
        f, g = boundary(c, node)
        options.append((path, VComp(Id2(f), node)))
        options.append((path, VComp(node, Id2(g))))
    path, rewritten = options[rng.randrange(len(options))]
    return _replace(e, path, rewritten)


def to_dict(e: PastingExpr) -> Dict[str, Any]:
    if isinstance(e, Cell2):
        return {"op": "cell", "id": e.cell}
    if isinstance(e, Id2):
        return {"op": "id2", "onecell": e.onecell}
    if isinstance(e, VComp):
        return {"op": "vcomp", "args": [to_dict(e.first), to_dict(e.second)]}
    if isinstance(e, LWhisk):
        return {"op": "lwhisk", "onecell": e.onecell, "body": to_dict(e.body)}
    return {"op": "rwhisk", "body": to_dict(e.body), "onecell": e.onecell}


def from_dict(data: Mapping[str, Any]) -> PastingExpr:
    try:
        op = data["op"]
        if op == "cell":
            return Cell2(data["id"])
        if op == "id2":
            return Id2(data["onecell"])
        if op == "vcomp":
            return vcomp_all(*(from_dict(arg) for arg in data["args"]))
        if op == "lwhisk":
            return LWhisk(data["onecell"], from_dict(data["body"]))
        if op == "rwhisk":
            return RWhisk(from_dict(data["body"]), data["onecell"])
    except (KeyError, TypeError) as e:
        raise SerializationError(f"Malformed pasting expression: {str(e)}")
    raise SerializationError(f"Unknown pasting operation {op!r}")


@dataclass(frozen=True)
class PastingFixture:
    """
    A named pasting diagram with symbolic parameters.

    Templates use ``{"op": "cell", "ref": name}`` (optionally ``"inverse": true``)
    for 2-cells and a name or list of names for 1-cells; lists denote
    composites. A fixture is either an equation (``lhs``/``rhs``) or a single
    construction (``expr``).
    """
    name: str
    params: Tuple[str, ...]
    lhs: Optional[Dict[str, Any]] = None
    rhs: Optional[Dict[str, Any]] = None
    expr: Optional[Dict[str, Any]] = None
    description: str = ""

    @property
    def is_equation(self) -> bool:
        return self.lhs is not None

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PastingFixture":
        if "name" not in data or ("expr" in data) == ("lhs" in data):
            raise SerializationError("A fixture needs a name and either expr or lhs/rhs")
        if "lhs" in data and "rhs" not in data:
            raise SerializationError(f"Fixture {data['name']!r} has lhs without rhs")
        return cls(
            name=data["name"],
            params=tuple(data.get("params", ())),
            lhs=data.get("lhs"),
            rhs=data.get("rhs"),
            expr=data.get("expr"),
            description=data.get("description", ""),
        )


def _bind_onecell(c: Fin2Category, ref: Union[str, List[str]], bindings: Mapping[str, str]) -> str:
    refs = [ref] if isinstance(ref, str) else list(ref)
    try:
        return c.then1(*(bindings[r] for r in refs))
    except KeyError as e:
        raise StructuralError(f"Unbound fixture parameter {str(e)}")


def _instantiate(node: Mapping[str, Any], c: Fin2Category,
                 bindings: Mapping[str, str]) -> PastingExpr:
    op = node.get("op")
    if op == "cell":
        if node["ref"] not in bindings:
            raise StructuralError(f"Unbound fixture parameter {node['ref']!r}")
        cell = bindings[node["ref"]]
        if node.get("inverse"):
            cell = c.require_inverse(cell)
        return Cell2(cell)
    if op == "id2":
        return Id2(_bind_onecell(c, node["onecell"], bindings))
    if op == "vcomp":
        return vcomp_all(*(_instantiate(arg, c, bindings) for arg in node["args"]))
    if op == "lwhisk":
        return LWhisk(_bind_onecell(c, node["onecell"], bindings),
                      _instantiate(node["body"], c, bindings))
    if op == "rwhisk":
        return RWhisk(_instantiate(node["body"], c, bindings),
                      _bind_onecell(c, node["onecell"], bindings))
    raise SerializationError(f"Unknown fixture operation {op!r}")


def instantiate(fixture: PastingFixture, c: Fin2Category,
                bindings: Mapping[str, str]) -> Tuple[PastingExpr, ...]:
    """Concrete expressions of ``fixture``: ``(lhs, rhs)`` for equations, ``(expr,)`` otherwise."""
    missing = [p for p in fixture.params if p not in bindings]
    if missing:
        raise StructuralError(f"Fixture {fixture.name!r} is missing bindings {missing}")
    if fixture.is_equation:
        return _instantiate(fixture.lhs, c, bindings), _instantiate(fixture.rhs, c, bindings)
    return (_instantiate(fixture.expr, c, bindings),)


def fixture_holds(fixture: PastingFixture, c: Fin2Category, bindings: Mapping[str, str],
                  config: Optional[EngineConfig] = None) -> bool:
    lhs, rhs = instantiate(fixture, c, bindings)
    return pastings_agree(c, lhs, rhs, config)


def fixture_value(fixture: PastingFixture, c: Fin2Category, bindings: Mapping[str, str],
                  config: Optional[EngineConfig] = None) -> str:
    (expr,) = instantiate(fixture, c, bindings)
    return eval_pasting(c, expr, config)


class FixtureLibrary:
    """Lazily loaded ``*.pexpr`` files from one directory, keyed by fixture name."""

    def __init__(self, directory: Union[str, Path]) -> None:
        self.directory = Path(directory)
        self.logger = logging.getLogger(self.__class__.__name__)
        self._fixtures: Optional[Dict[str, PastingFixture]] = None

    def _load(self) -> Dict[str, PastingFixture]:
        if self._fixtures is None:
            fixtures = {}
            for path in sorted(self.directory.glob("*.pexpr")):
                fixture = load_fixture(path)
                fixtures[fixture.name] = fixture
            self.logger.debug("loaded %d fixtures from %s", len(fixtures), self.directory)
            self._fixtures = fixtures
        return self._fixtures

    def names(self) -> Tuple[str, ...]:
        return tuple(self._load())

    def __getitem__(self, name: str) -> PastingFixture:
        try:
            return self._load()[name]
        except KeyError:
            raise StructuralError(f"No pasting fixture named {name!r} in {self.directory}")


@lru_cache(maxsize=None)
def load_fixture(path: Union[str, Path]) -> PastingFixture:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return PastingFixture.from_dict(json.load(handle))
    except (OSError, ValueError) as e:
        raise SerializationError(f"Cannot read fixture {path}: {str(e)}")
