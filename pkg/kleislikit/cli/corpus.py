"""
The instance corpus: small categories, every monad on them, their Kleisli
structures and reflections, locally discrete lifts and twisted pseudomonads.
"""
import itertools
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from ..abskl1 import check_codescent_profile, kleisli_abskl, reflect
from ..abskl2 import abskl2_of_pseudomonad, check_theorem_2d_profile
from ..config import CorpusConfig, EngineConfig, resolve
from ..fincat import (
    FinCategory,
    enumerate_categories,
    poset_category,
    span_to_terminal,
    terminal_cat,
    walking_arrow,
)
from ..monadkit import (
    Monad,
    closure_operators,
    const_terminal_monad,
    enumerate_monads,
    identity_monad,
    poset_closure,
)
from ..pseudomonadkit import Pseudomonad, scalar_twist, strict_pseudomonad
from ..twocat import locally_discrete, scalar_extension
from .serialization import canonical_dumps, from_document, payload_hash, to_document

logger = logging.getLogger(__name__)

KINDS = ("category", "monad", "abskl1", "fin2cat", "pseudomonad", "abskl2", "comorphism")


@dataclass(frozen=True)
class CorpusInstance:
    """A named serialised value with the results the engine must reproduce on it."""
    name: str
    kind: str
    payload: Dict[str, Any]
    expected: Optional[Dict[str, Any]] = field(default=None)

    def value(self) -> Any:
        return from_document(self.payload, self.kind)

    def to_dict(self) -> Dict[str, Any]:
        data = {"name": self.name, "kind": self.kind, "payload": self.payload}
        if self.expected is not None:
            data["expected"] = self.expected
        return data


def _posets(max_size: int) -> Iterator[FinCategory]:
    """Every poset with 1 to ``max_size`` elements, up to isomorphism."""
    for n in range(1, max_size + 1):
        elements = [str(i) for i in range(n)]
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        seen = set()
        index = 0
        for mask in range(2 ** len(pairs)):
            relation = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
            if any((j, i) in relation for i, j in relation):
                continue
            if any((a, d) not in relation
                   for a, b in relation for c, d in relation if b == c and a != d):
                continue
            key = min(
                tuple(sorted((perm[i], perm[j]) for i, j in relation))
                for perm in itertools.permutations(range(n))
            )
            if key in seen:
                continue
            seen.add(key)
            leq = [(elements[i], elements[j]) for i, j in key]
            yield poset_category(elements, leq, name=f"poset{n}_{index}")
            index += 1


def _named_categories() -> List[FinCategory]:
    return [terminal_cat(), walking_arrow(), span_to_terminal()]


def _monads_on(c: FinCategory, corpus: CorpusConfig, config: EngineConfig) -> List[Monad]:
    monads = enumerate_monads(c, config)
    if corpus.max_monads_per_category is not None:
        monads = monads[:corpus.max_monads_per_category]
    return monads


class _Collector:
    def __init__(self) -> None:
        self.instances: List[CorpusInstance] = []
        self.names = set()

    def add(self, name: str, kind: str, value: Any,
            expected: Optional[Dict[str, Any]] = None) -> None:
        if name in self.names:
            return
        self.names.add(name)
        self.instances.append(CorpusInstance(name, kind, to_document(value), expected))


def generate_corpus(corpus: Optional[CorpusConfig] = None,
                    config: Optional[EngineConfig] = None) -> List[CorpusInstance]:
    """
    Build the corpus deterministically.

    Args:
        corpus: Bounds for the exhaustive parts. Defaults to CorpusConfig().
        config: Engine guards for the enumerations.

    Returns:
        List[CorpusInstance]: Instances in generation order; names are unique.

    Raises:
        SizeGuardError: If an enumeration inside the bounds exceeds the guard.
    """
    corpus = corpus or CorpusConfig()
    cfg = resolve(config)
    out = _Collector()

    named = _named_categories()
    enumerated = enumerate_categories(corpus.max_objects, corpus.max_morphisms, cfg)
    for c in named + enumerated:
        out.add(f"category:{c.name}", "category", c)
        out.add(f"fin2cat:ld({c.name})", "fin2cat", locally_discrete(c))

    monads: List[Tuple[str, Monad, Optional[Dict[str, Any]]]] = []
    for c in named:
        monads.append((f"identity({c.name})", identity_monad(c), {"profile": [True] * 5}))
    span = span_to_terminal()
    monads.append((f"const_terminal({span.name})", const_terminal_monad(span),
                   {"profile": [False] * 5}))
    for p in _posets(corpus.poset_max_size):
        out.add(f"category:{p.name}", "category", p)
        for k, closure in enumerate(closure_operators(p)):
            monads.append((f"closure{k}({p.name})", poset_closure(p, closure), None))
    for c in enumerated:
        for k, m in enumerate(_monads_on(c, corpus, cfg)):
            monads.append((f"monad{k}({c.name})", m, None))

    for name, m, expected in monads:
        out.add(f"monad:{name}", "monad", m, expected)
        out.add(f"abskl1:kl({name})", "abskl1", kleisli_abskl(m))
        out.add(f"comorphism:unit({name})", "comorphism", reflect(m).unit)
        pm = strict_pseudomonad(m, 1, cfg)
        expected2 = None if expected is None else {"profile2": expected["profile"][:3]}
        out.add(f"pseudomonad:ld({name})", "pseudomonad", pm, expected2)

    if corpus.include_twists:
        for c in named:
            out.add(f"fin2cat:{c.name}xZ{corpus.twist_order}", "fin2cat",
                    scalar_extension(c, corpus.twist_order))
        for name, m, _ in monads:
            if m.base.name not in {c.name for c in named}:
                continue
            pm = strict_pseudomonad(m, corpus.twist_order, cfg)
            twisted = scalar_twist(pm, {x: 1 for x in pm.base.objects}, config=cfg)
            out.add(f"pseudomonad:twist({name})", "pseudomonad", twisted)
            out.add(f"abskl2:kl(twist({name}))", "abskl2", abskl2_of_pseudomonad(twisted, cfg))
    for name, m, _ in monads:
        if m.base.name in {c.name for c in named}:
            pm = strict_pseudomonad(m, 1, cfg)
            out.add(f"abskl2:kl(ld({name}))", "abskl2", abskl2_of_pseudomonad(pm, cfg))

    logger.info("generated corpus of %d instances", len(out.instances))
    return out.instances


def check_expected(instance: CorpusInstance, config: Optional[EngineConfig] = None) -> bool:
    """
    Whether the engine reproduces the instance's expected record; True when there is none.
    """
    if not instance.expected:
        return True
    value = instance.value()
    if "profile" in instance.expected and isinstance(value, Monad):
        profile = check_codescent_profile(value, config)
        if list(profile.conditions) != instance.expected["profile"]:
            logger.error("%s: profile %s differs from expected %s", instance.name,
                         list(profile.conditions), instance.expected["profile"])
            return False
    if "profile2" in instance.expected and isinstance(value, Pseudomonad):
        profile2 = check_theorem_2d_profile(value, config)
        if list(profile2.conditions) != instance.expected["profile2"]:
            logger.error("%s: 2-dimensional profile %s differs from expected %s", instance.name,
                         list(profile2.conditions), instance.expected["profile2"])
            return False
    return True


def _file_name(name: str) -> str:
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name)
    return f"{safe}.json"


def write_corpus(instances: List[CorpusInstance], out_dir: Union[str, Path]) -> Path:
    """
    Write one JSON file per instance and an ``index.json`` with sha256 hashes of the
    canonical payloads.

    Returns:
        Path: The index file.
    """
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for instance in instances:
        file_name = _file_name(instance.name)
        (directory / file_name).write_text(
            json.dumps(instance.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        entries.append({
            "name": instance.name,
            "kind": instance.kind,
            "file": file_name,
            "sha256": payload_hash(instance.payload),
            "expected": instance.expected,
        })
    index = directory / "index.json"
    index.write_text(json.dumps({"instances": entries}, indent=2, sort_keys=True) + "\n",
                     encoding="utf-8")
    logger.info("wrote %d corpus instances to %s", len(entries), directory)
    return index


def corpus_digest(instances: List[CorpusInstance]) -> str:
    """A single canonical dump of the whole corpus, equal across regenerations."""
    return canonical_dumps([i.to_dict() for i in instances])
