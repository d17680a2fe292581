"""
JSON documents for every value the engine exchanges.

Each top-level document carries a ``kind``. Tables are arrays of triples in
diagrammatic order (``[first, second, composite]``); maps between ids are JSON
objects. Documents embed the documents of the values they depend on.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

from ..abskl1 import AbsKL1, CoMorphism, tau
from ..abskl2 import AbsKL2, KLExtMorphism, presentation2, tau2
from ..exceptions import KleisliError, SerializationError
from ..fincat import FinCategory, Functor, NatTrans, identity_functor
from ..monadkit import Comonad, Monad, presentation
from ..pseudomonadkit import Pseudocomonad, Pseudomonad
from ..twocat import Fin2Category, PseudoNat, TwoFunctor, identity_twofunctor

logger = logging.getLogger(__name__)

Document = Dict[str, Any]


def _require(data: Mapping[str, Any], *keys: str) -> None:
    if not isinstance(data, Mapping):
        raise SerializationError(f"Expected a JSON object, got {type(data).__name__}")
    missing = [k for k in keys if k not in data]
    if missing:
        raise SerializationError(f"Document is missing {', '.join(missing)}")


def _triples(rows: Any, what: str) -> Dict[Tuple[str, str], str]:
    table = {}
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise SerializationError(f"{what} rows must be [first, second, result] triples")
        table[(str(row[0]), str(row[1]))] = str(row[2])
    return table


def _rows(table: Mapping[Tuple[str, str], str]) -> List[List[str]]:
    return [[a, b, c] for (a, b), c in table.items()]


# Categories

def category_to_dict(c: FinCategory) -> Document:
    return {
        "kind": "category",
        "name": c.name,
        "objects": list(c.objects),
        "morphisms": [{"id": m, "src": s, "tgt": t} for m, (s, t) in c.morphisms.items()],
        "identities": dict(c.identities),
        "compose": _rows(c.compose_table),
    }


def category_from_dict(data: Mapping[str, Any]) -> FinCategory:
    _require(data, "objects", "morphisms", "identities", "compose")
    try:
        morphisms = {m["id"]: (m["src"], m["tgt"]) for m in data["morphisms"]}
    except (KeyError, TypeError):
        raise SerializationError("morphisms must be objects with id, src and tgt")
    return FinCategory(data["objects"], morphisms, data["identities"],
                       _triples(data["compose"], "compose"), name=data.get("name", ""))


def _functor_to_dict(f: Functor) -> Document:
    return {"objects": dict(f.object_map), "morphisms": dict(f.morphism_map)}


def _functor_from_dict(data: Mapping[str, Any], source: FinCategory, target: FinCategory,
                       name: str = "") -> Functor:
    _require(data, "objects", "morphisms")
    return Functor(source, target, data["objects"], data["morphisms"], name=name)


# Monads and abstract Kleisli structures

def monad_to_dict(m: Monad) -> Document:
    return {
        "kind": "monad",
        "name": m.name,
        "category": category_to_dict(m.base),
        "endo": _functor_to_dict(m.endo),
        "unit": dict(m.unit.components),
        "mult": dict(m.mult.components),
    }


def monad_from_dict(data: Mapping[str, Any]) -> Monad:
    _require(data, "category", "endo", "unit", "mult")
    c = category_from_dict(data["category"])
    t = _functor_from_dict(data["endo"], c, c, name="T")
    return Monad(t, NatTrans(identity_functor(c), t, data["unit"]),
                 NatTrans(t.then(t), t, data["mult"]), name=data.get("name", ""))


def comonad_to_dict(q: Comonad) -> Document:
    return {
        "kind": "comonad",
        "name": q.name,
        "category": category_to_dict(q.base),
        "endo": _functor_to_dict(q.endo),
        "counit": dict(q.counit.components),
        "comult": dict(q.comult.components),
    }


def comonad_from_dict(data: Mapping[str, Any]) -> Comonad:
    _require(data, "category", "endo", "counit", "comult")
    c = category_from_dict(data["category"])
    q = _functor_from_dict(data["endo"], c, c, name="Q")
    return Comonad(q, NatTrans(q, identity_functor(c), data["counit"]),
                   NatTrans(q, q.then(q), data["comult"]), name=data.get("name", ""))


def abskl1_to_dict(s: AbsKL1) -> Document:
    return {"kind": "abskl1", "name": s.name, "comonad": comonad_to_dict(s.comonad),
            "theta": dict(s.theta)}


def abskl1_from_dict(data: Mapping[str, Any]) -> AbsKL1:
    _require(data, "comonad", "theta")
    return AbsKL1(comonad_from_dict(data["comonad"]), data["theta"], name=data.get("name", ""))


def comorphism_to_dict(g: CoMorphism) -> Document:
    """Co-morphisms out of a Kleisli construction into a monad or the image of a structure."""
    target = g.target.structure
    return {
        "kind": "comorphism",
        "source": monad_to_dict(g.source.monad),
        "target": abskl1_to_dict(target) if isinstance(target, AbsKL1)
        else monad_to_dict(g.target.monad),
        "f": _functor_to_dict(g.f),
        "fbar": _functor_to_dict(g.fbar),
    }


def comorphism_from_dict(data: Mapping[str, Any]) -> CoMorphism:
    _require(data, "source", "target", "f", "fbar")
    source = presentation(monad_from_dict(data["source"]))
    if data["target"].get("kind") == "abskl1":
        target = tau(abskl1_from_dict(data["target"]))
    else:
        target = presentation(monad_from_dict(data["target"]))
    return CoMorphism(
        source,
        target,
        _functor_from_dict(data["f"], source.monad.base, target.monad.base),
        _functor_from_dict(data["fbar"], source.category, target.category),
    )


# 2-categories

def fin2cat_to_dict(c: Fin2Category) -> Document:
    return {
        "kind": "fin2cat",
        "name": c.name,
        "objects": list(c.objects),
        "onecells": [{"id": f, "src": s, "tgt": t} for f, (s, t) in c.onecells.items()],
        "twocells": [{"id": a, "dom": f, "cod": g} for a, (f, g) in c.twocells.items()],
        "identity_1": dict(c.identity_1),
        "identity_2": dict(c.identity_2),
        "compose_1": _rows(c.compose_1),
        "vcompose": _rows(c.vcompose),
        "lwhisker": _rows(c.lwhisker),
        "rwhisker": _rows(c.rwhisker),
        "inverses": dict(c.inverses),
    }


def fin2cat_from_dict(data: Mapping[str, Any]) -> Fin2Category:
    _require(data, "objects", "onecells", "twocells", "identity_1", "identity_2", "compose_1",
             "vcompose", "lwhisker", "rwhisker")
    try:
        onecells = {f["id"]: (f["src"], f["tgt"]) for f in data["onecells"]}
        twocells = {a["id"]: (a["dom"], a["cod"]) for a in data["twocells"]}
    except (KeyError, TypeError):
        raise SerializationError("1-cells need id/src/tgt and 2-cells need id/dom/cod")
    return Fin2Category(
        data["objects"],
        onecells,
        twocells,
        data["identity_1"],
        data["identity_2"],
        _triples(data["compose_1"], "compose_1"),
        _triples(data["vcompose"], "vcompose"),
        _triples(data["lwhisker"], "lwhisker"),
        _triples(data["rwhisker"], "rwhisker"),
        data.get("inverses", {}),
        name=data.get("name", ""),
    )


def _twofunctor_to_dict(f: TwoFunctor) -> Document:
    return {"objects": dict(f.object_map), "onecells": dict(f.onecell_map),
            "twocells": dict(f.twocell_map)}


def _twofunctor_from_dict(data: Mapping[str, Any], source: Fin2Category, target: Fin2Category,
                          name: str = "") -> TwoFunctor:
    _require(data, "objects", "onecells", "twocells")
    return TwoFunctor(source, target, data["objects"], data["onecells"], data["twocells"],
                      name=name)


def _pseudonat_to_dict(p: PseudoNat) -> Document:
    return {"components": dict(p.components), "cells": dict(p.cells),
            "inverses": dict(p.inverses)}


def _pseudonat_from_dict(data: Mapping[str, Any], source: TwoFunctor, target: TwoFunctor,
                         name: str = "") -> PseudoNat:
    _require(data, "components", "cells")
    return PseudoNat(source, target, data["components"], data["cells"], data.get("inverses"),
                     name=name)


def pseudomonad_to_dict(pm: Pseudomonad) -> Document:
    return {
        "kind": "pseudomonad",
        "name": pm.name,
        "base": fin2cat_to_dict(pm.base),
        "endo": _twofunctor_to_dict(pm.endo),
        "eta": _pseudonat_to_dict(pm.eta),
        "mu": _pseudonat_to_dict(pm.mu),
        "lam": dict(pm.lam.components),
        "alf": dict(pm.alf.components),
        "rho": dict(pm.rho.components),
    }


def pseudomonad_from_dict(data: Mapping[str, Any]) -> Pseudomonad:
    _require(data, "base", "endo", "eta", "mu", "lam", "alf", "rho")
    c = fin2cat_from_dict(data["base"])
    t = _twofunctor_from_dict(data["endo"], c, c, name="T")
    eta = _pseudonat_from_dict(data["eta"], identity_twofunctor(c), t, name="eta")
    mu = _pseudonat_from_dict(data["mu"], t.then(t), t, name="mu")
    return Pseudomonad.assemble(t, eta, mu, data["lam"], data["alf"], data["rho"],
                                name=data.get("name", ""))


def pseudocomonad_to_dict(pc: Pseudocomonad) -> Document:
    return {
        "kind": "pseudocomonad",
        "name": pc.name,
        "base": fin2cat_to_dict(pc.base),
        "endo": _twofunctor_to_dict(pc.endo),
        "eps": _pseudonat_to_dict(pc.eps),
        "delta": _pseudonat_to_dict(pc.delta),
        "lam": dict(pc.lam.components),
        "alf": dict(pc.alf.components),
        "rho": dict(pc.rho.components),
    }


def pseudocomonad_from_dict(data: Mapping[str, Any]) -> Pseudocomonad:
    _require(data, "base", "endo", "eps", "delta", "lam", "alf", "rho")
    c = fin2cat_from_dict(data["base"])
    q = _twofunctor_from_dict(data["endo"], c, c, name="Q")
    eps = _pseudonat_from_dict(data["eps"], q, identity_twofunctor(c), name="eps")
    delta = _pseudonat_from_dict(data["delta"], q, q.then(q), name="delta")
    return Pseudocomonad.assemble(q, eps, delta, data["lam"], data["alf"], data["rho"],
                                  name=data.get("name", ""))


def abskl2_to_dict(s: AbsKL2) -> Document:
    return {
        "kind": "abskl2",
        "name": s.name,
        "comonad": pseudocomonad_to_dict(s.comonad),
        "theta": dict(s.theta),
        "u": dict(s.u),
        "m": dict(s.m),
    }


def abskl2_from_dict(data: Mapping[str, Any]) -> AbsKL2:
    _require(data, "comonad", "theta", "u", "m")
    return AbsKL2(pseudocomonad_from_dict(data["comonad"]), data["theta"], data["u"], data["m"],
                  name=data.get("name", ""))


def klext_to_dict(m: KLExtMorphism) -> Document:
    """Morphisms from free pseudoalgebras of a pseudomonad into the image of a structure."""
    target = m.target.structure
    if not isinstance(target, AbsKL2):
        raise SerializationError("only morphisms into the image of a structure are serialised")
    return {
        "kind": "klext",
        "pseudomonad": pseudomonad_to_dict(m.source.pseudomonad),
        "target": abskl2_to_dict(target),
        "g": _twofunctor_to_dict(m.g),
        "gbar": _twofunctor_to_dict(m.gbar),
    }


def klext_from_dict(data: Mapping[str, Any]) -> KLExtMorphism:
    _require(data, "pseudomonad", "target", "g", "gbar")
    source = presentation2(pseudomonad_from_dict(data["pseudomonad"]))
    target = tau2(abskl2_from_dict(data["target"]))
    return KLExtMorphism(
        source,
        target,
        _twofunctor_from_dict(data["g"], source.pseudomonad.base, target.pseudomonad.base),
        _twofunctor_from_dict(data["gbar"], source.category, target.category),
    )


# Dispatch

READERS: Dict[str, Callable[[Mapping[str, Any]], Any]] = {
    "category": category_from_dict,
    "monad": monad_from_dict,
    "comonad": comonad_from_dict,
    "abskl1": abskl1_from_dict,
    "comorphism": comorphism_from_dict,
    "fin2cat": fin2cat_from_dict,
    "pseudomonad": pseudomonad_from_dict,
    "pseudocomonad": pseudocomonad_from_dict,
    "abskl2": abskl2_from_dict,
    "klext": klext_from_dict,
}

WRITERS: Tuple[Tuple[type, Callable[[Any], Document]], ...] = (
    (FinCategory, category_to_dict),
    (Monad, monad_to_dict),
    (Comonad, comonad_to_dict),
    (AbsKL1, abskl1_to_dict),
    (CoMorphism, comorphism_to_dict),
    (Fin2Category, fin2cat_to_dict),
    (Pseudomonad, pseudomonad_to_dict),
    (Pseudocomonad, pseudocomonad_to_dict),
    (AbsKL2, abskl2_to_dict),
    (KLExtMorphism, klext_to_dict),
)


def to_document(value: Any) -> Document:
    for cls, writer in WRITERS:
        if isinstance(value, cls):
            return writer(value)
    raise SerializationError(f"No document format for {type(value).__name__}")


def from_document(data: Mapping[str, Any], expected: Optional[str] = None) -> Any:
    """
    Rebuild and validate the value a document describes.

    Raises:
        SerializationError: If the kind is unknown, differs from ``expected``
            or the document is malformed.
        StructuralError: If the tables are inconsistent.
        LawViolationError: If the value fails its laws.
    """
    _require(data, "kind")
    kind = data["kind"]
    if expected is not None and kind != expected:
        raise SerializationError(f"Expected a {expected} document, got {kind!r}")
    reader = READERS.get(kind)
    if reader is None:
        raise SerializationError(f"Unsupported document kind: {kind!r}")
    try:
        return reader(data)
    except KleisliError:
        raise
    except (KeyError, TypeError, AttributeError) as e:
        raise SerializationError(f"Malformed {kind} document: {str(e)}")


def dumps(value: Any) -> str:
    return json.dumps(to_document(value), indent=2, sort_keys=True)


def canonical_dumps(data: Any) -> str:
    """Compact sorted JSON used for hashes and byte-for-byte comparisons."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def payload_hash(data: Any) -> str:
    return hashlib.sha256(canonical_dumps(data).encode("utf-8")).hexdigest()


def loads(text: str, expected: Optional[str] = None) -> Any:
    try:
        data = json.loads(text)
    except ValueError as e:
        raise SerializationError(f"Invalid JSON: {str(e)}")
    return from_document(data, expected)


def load_path(path: Union[str, Path], expected: Optional[str] = None) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SerializationError(f"Cannot read {path}: {str(e)}")
    logger.debug("loading %s document from %s", expected or "a", path)
    return loads(text, expected)


def dump_path(value: Any, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(value) + "\n", encoding="utf-8")
