import hashlib
import itertools
import logging
from collections import defaultdict
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..config import EngineConfig, resolve
from .category import FinCategory
from .functor import Functor, NatTrans, is_isomorphism
from .naming import identity_id

logger = logging.getLogger(__name__)


def _compose_constraints(c: FinCategory,
                         order: Sequence[str]) -> Dict[int, List[Tuple[str, str, str]]]:
    """Group composition triples by the position at which their last member is assigned."""
    position = {m: i for i, m in enumerate(order)}
    constraints: Dict[int, List[Tuple[str, str, str]]] = defaultdict(list)
    for (f, g), h in c.compose_table.items():
        slots = [position[m] for m in (f, g, h) if m in position]
        if slots:
            constraints[max(slots)].append((f, g, h))
    return constraints


def iter_functors(c: FinCategory, d: FinCategory,
                  config: Optional[EngineConfig] = None) -> Iterator[Functor]:
    cfg = resolve(config)
    cfg.check_guard(len(d.objects) ** len(c.objects),
                    f"functors {c.name or 'source'} -> {d.name or 'target'}")
    identities = set(c.identities.values())
    order = [m for m in c.morphisms if m not in identities]
    constraints = _compose_constraints(c, order)

    for images in itertools.product(d.objects, repeat=len(c.objects)):
        object_map = dict(zip(c.objects, images))
        candidates = [d.hom(object_map[c.src(m)], object_map[c.tgt(m)]) for m in order]
        if any(not options for options in candidates):
            continue
        assignment = {c.identities[x]: d.identities[object_map[x]] for x in c.objects}

        def extend(i: int) -> Iterator[Functor]:
            if i == len(order):
                yield Functor(c, d, object_map, dict(assignment))
                return
            m = order[i]
            for image in candidates[i]:
                assignment[m] = image
                if all(
                    d.compose_table.get((assignment[f], assignment[g])) == assignment[h]
                    for f, g, h in constraints.get(i, ())
                ):
                    yield from extend(i + 1)
            del assignment[m]

        yield from extend(0)


def enumerate_functors(c: FinCategory, d: FinCategory,
                       config: Optional[EngineConfig] = None) -> List[Functor]:
    """
    Every functor ``c -> d``, each exactly once.

    Object maps are visited in lexicographic order of the targets' ids and
    morphism images likewise, so the output order is deterministic.

    Args:
        c: Source category.
        d: Target category.
        config: Engine configuration; the guard bounds ``|objects(d)| ** |objects(c)|``.

    Returns:
        list of Functor.

    Raises:
        SizeGuardError: If the object-map search space exceeds the guard.

    Example:
        >>> len(enumerate_functors(walking_arrow(), walking_arrow()))
        3
    """
    result = list(iter_functors(c, d, config))
    logger.debug("enumerated %d functors %s -> %s", len(result), c.name, d.name)
    return result


def enumerate_endofunctors(c: FinCategory, config: Optional[EngineConfig] = None) -> List[Functor]:
    return enumerate_functors(c, c, config)


def enumerate_nat_trans(f: Functor, g: Functor,
                        config: Optional[EngineConfig] = None) -> List[NatTrans]:
    """Every natural transformation ``f => g`` in lexicographic component order."""
    cfg = resolve(config)
    c, d = f.source, f.target
    objects = list(c.objects)
    candidates = [d.hom(f.obj(x), g.obj(x)) for x in objects]
    space = 1
    for options in candidates:
        space *= len(options)
    cfg.check_guard(space, "natural transformations")
    if space == 0:
        return []

    position = {x: i for i, x in enumerate(objects)}
    checks: Dict[int, List[str]] = defaultdict(list)
    for m, (s, t) in c.morphisms.items():
        checks[max(position[s], position[t])].append(m)

    results: List[NatTrans] = []
    components: Dict[str, str] = {}

    def extend(i: int) -> None:
        if i == len(objects):
            results.append(NatTrans(f, g, dict(components)))
            return
        x = objects[i]
        for option in candidates[i]:
            components[x] = option
            if all(
                d.then(f.mor(m), components[c.tgt(m)]) == d.then(components[c.src(m)], g.mor(m))
                for m in checks.get(i, ())
            ):
                extend(i + 1)
        del components[x]

    extend(0)
    return results


def find_isomorphism(c: FinCategory, d: FinCategory,
                     config: Optional[EngineConfig] = None) -> Optional[Functor]:
    """An isomorphism ``c -> d`` if one exists."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    if sorted(c.hom_sizes().values()) != sorted(d.hom_sizes().values()):
        return None
    for functor in iter_functors(c, d, config):
        if is_isomorphism(functor):
            return functor
    return None


def isomorphic(c: FinCategory, d: FinCategory, config: Optional[EngineConfig] = None) -> bool:
    return find_isomorphism(c, d, config) is not None


def _hom_distributions(n: int, k: int) -> Iterator[Dict[Tuple[int, int], int]]:
    pairs = [(i, j) for i in range(n) for j in range(n)]
    for counts in itertools.product(range(k + 1), repeat=len(pairs)):
        if sum(counts) == k:
            yield dict(zip(pairs, counts))


def _label(m: int, perm: Tuple[int, ...], relabel: Dict[int, Tuple]) -> Tuple:
    if m < 0:
        return ("id", perm[-m - 1])
    return relabel[m]


def _canonical_form(n: int, homs: Dict[Tuple[int, int], List[int]],
                    table: Dict[Tuple[int, int], int]) -> Tuple:
    """Lexicographically least relabelled table over object and per-hom permutations."""
    best = None
    for perm in itertools.permutations(range(n)):
        pairs = sorted(homs, key=lambda p: (perm[p[0]], perm[p[1]]))
        signature = tuple((perm[p[0]], perm[p[1]], len(homs[p])) for p in pairs)
        per_hom = [itertools.permutations(homs[p]) for p in pairs]
        for choice in itertools.product(*per_hom):
            relabel: Dict[int, Tuple] = {}
            for p, ordering in zip(pairs, choice):
                for slot, m in enumerate(ordering):
                    relabel[m] = ("m", perm[p[0]], perm[p[1]], slot)
            entries = tuple(sorted(
                (relabel[f], relabel[g], _label(h, perm, relabel))
                for (f, g), h in table.items()
            ))
            candidate = (signature, entries)
            if best is None or candidate < best:
                best = candidate
    return best


def enumerate_categories(max_objects: int, max_morphisms: int,
                         config: Optional[EngineConfig] = None) -> List[FinCategory]:
    """
    Every finite category with at most ``max_objects`` objects and at most
    ``max_morphisms`` morphisms (identities included), up to isomorphism.

    Non-identity morphisms are distributed over hom-sets, composition tables
    are found by backtracking with an associativity check, and the results are
    deduplicated by a canonical relabelling.
    """
    cfg = resolve(config)
    found: Dict[Tuple, FinCategory] = {}
    for n in range(min(max_objects, max_morphisms) + 1):
        for k in range(max(0, max_morphisms - n) + 1):
            for distribution in _hom_distributions(n, k):
                for homs, table in _composition_tables(n, distribution, cfg):
                    key = _canonical_form(n, homs, table)
                    if key not in found:
                        found[key] = _category_from_form(n, key)
    result = sorted(found.values(), key=lambda c: (len(c.objects), len(c.morphisms), c.name))
    logger.info("enumerated %d categories (objects <= %d, morphisms <= %d)",
                len(result), max_objects, max_morphisms)
    return result


def _composition_tables(n: int, distribution: Dict[Tuple[int, int], int], cfg: EngineConfig):
    # Non-identity morphisms are numbered from 0; the identity of object i is -(i + 1).
    homs: Dict[Tuple[int, int], List[int]] = {}
    ends: Dict[int, Tuple[int, int]] = {}
    counter = 0
    for pair, count in sorted(distribution.items()):
        if count:
            homs[pair] = list(range(counter, counter + count))
            for m in homs[pair]:
                ends[m] = pair
            counter += count

    def options(i: int, j: int) -> List[int]:
        result = list(homs.get((i, j), []))
        if i == j:
            result.append(-(i + 1))
        return result

    pairs = [(f, g) for f in ends for g in ends if ends[f][1] == ends[g][0]]
    choices = [options(ends[f][0], ends[g][1]) for f, g in pairs]
    if any(not c for c in choices):
        return
    # Charged per partial table visited.
    context = f"composition tables on {n} objects"
    visited = 0
    table: Dict[Tuple[int, int], int] = {}

    def comp(a: int, b: int) -> Optional[int]:
        if a < 0:
            return b
        if b < 0:
            return a
        return table.get((a, b))

    def associative() -> bool:
        for (f, g), fg in table.items():
            for h in ends:
                if ends[g][1] != ends[h][0]:
                    continue
                gh = comp(g, h)
                left = comp(fg, h)
                right = comp(f, gh) if gh is not None else None
                if left is not None and right is not None and left != right:
                    return False
        return True

    def extend(i: int):
        nonlocal visited
        visited += 1
        if visited > cfg.enumeration_guard:
            cfg.check_guard(visited, context)
        if i == len(pairs):
            yield homs, dict(table)
            return
        for option in choices[i]:
            table[pairs[i]] = option
            if associative():
                yield from extend(i + 1)
        del table[pairs[i]]

    yield from extend(0)


def _category_from_form(n: int, key: Tuple) -> FinCategory:
    signature, entries = key
    identities = {f"o{i}": identity_id(f"o{i}") for i in range(n)}
    morphisms: Dict[str, Tuple[str, str]] = {ident: (obj, obj) for obj, ident in identities.items()}

    def name(label: Tuple) -> str:
        if label[0] == "id":
            return identities[f"o{label[1]}"]
        _, i, j, slot = label
        return f"m{i}{j}_{slot}"

    for i, j, count in signature:
        for slot in range(count):
            morphisms[f"m{i}{j}_{slot}"] = (f"o{i}", f"o{j}")

    def compose(f: str, g: str) -> str:
        if f in identities.values():
            return g
        if g in identities.values():
            return f
        return explicit[(f, g)]

    explicit = {(name(f), name(g)): name(h) for f, g, h in entries}
    hom_label = "".join(f"{i}{j}x{c}" for i, j, c in signature) or "bare"
    label = f"cat{n}_{hom_label}"
    if entries:
        text = ";".join(f"{a}.{b}={c}" for (a, b), c in sorted(explicit.items()))
        label = f"{label}_{hashlib.sha256(text.encode('utf-8')).hexdigest()[:8]}"
    return FinCategory.build(identities, morphisms, identities, compose, name=label)
