"""Small categories used throughout the corpus and the tests."""
from typing import Dict, Iterable, Sequence, Tuple

from .category import FinCategory
from .naming import identity_id


def _from_generators(objects: Sequence[str], arrows: Dict[str, Tuple[str, str]],
                     name: str) -> FinCategory:
    """A category in which no two non-identity arrows compose."""
    identities = {x: identity_id(x) for x in objects}
    morphisms = dict(arrows)
    morphisms.update({i: (x, x) for x, i in identities.items()})
    ids = set(identities.values())

    def compose(f: str, g: str) -> str:
        if f in ids:
            return g
        return f

    return FinCategory.build(objects, morphisms, identities, compose, name=name)


def empty_cat() -> FinCategory:
    return FinCategory((), {}, {}, {}, name="empty")


def terminal_cat() -> FinCategory:
    return _from_generators(["*"], {}, "terminal")


def walking_arrow() -> FinCategory:
    return _from_generators(["a", "b"], {"f": ("a", "b")}, "walking_arrow")


def parallel_pair() -> FinCategory:
    return _from_generators(["a", "b"], {"f": ("a", "b"), "g": ("a", "b")}, "parallel_pair")


def span_to_terminal() -> FinCategory:
    """Objects x, y, 1 with the two maps into 1."""
    return _from_generators(["1", "x", "y"], {"!x": ("x", "1"), "!y": ("y", "1")},
                            "span_to_terminal")


def poset_category(elements: Iterable[str], leq: Iterable[Tuple[str, str]],
                   name: str = "poset") -> FinCategory:
    """
    The category of a preorder; ``leq`` need not be reflexively or transitively closed.
    Morphism ``p<=q`` exists iff p <= q.
    """
    elements = sorted(set(elements))
    relation = {(p, p) for p in elements} | set(leq)
    changed = True
    while changed:
        changed = False
        for p, q in list(relation):
            for r, s in list(relation):
                if q == r and (p, s) not in relation:
                    relation.add((p, s))
                    changed = True
    morphisms = {f"{p}<={q}": (p, q) for p, q in relation}
    identities = {p: f"{p}<={p}" for p in elements}
    return FinCategory.build(
        elements, morphisms, identities,
        lambda f, g: f"{morphisms[f][0]}<={morphisms[g][1]}", name=name,
    )


def chain(n: int) -> FinCategory:
    elements = [str(i) for i in range(n)]
    return poset_category(elements, [(elements[i], elements[i + 1]) for i in range(n - 1)],
                          name=f"chain{n}")
