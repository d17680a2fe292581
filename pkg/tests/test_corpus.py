import json

import pytest

from kleislikit.cli import (
    KINDS,
    CorpusInstance,
    check_expected,
    corpus_digest,
    generate_corpus,
    payload_hash,
    to_document,
    write_corpus,
)
from kleislikit.config import CorpusConfig
from kleislikit.fincat import walking_arrow
from kleislikit.monadkit import identity_monad

SMALL = CorpusConfig(max_objects=1, max_morphisms=1, poset_max_size=1, include_twists=False,
                     max_monads_per_category=1)


@pytest.fixture(scope="module")
def corpus():
    return generate_corpus(SMALL)


def by_name(instances, name):
    return next(i for i in instances if i.name == name)


class TestGenerateCorpus:
    def test_names_are_unique(self, corpus):
        names = [i.name for i in corpus]
        assert len(names) == len(set(names))
        assert {i.kind for i in corpus} <= set(KINDS)

    def test_named_categories_are_present(self, corpus):
        names = {i.name for i in corpus}
        for category in ("terminal", "walking_arrow", "span_to_terminal"):
            assert any(n.startswith("category:") and category in n for n in names)
        assert "monad:identity(walking_arrow)" in names
        assert "monad:const_terminal(span_to_terminal)" in names

    def test_generation_is_deterministic(self, corpus):
        assert corpus_digest(generate_corpus(SMALL)) == corpus_digest(corpus)

    def test_expected_profiles(self, corpus):
        identity = by_name(corpus, "monad:identity(walking_arrow)")
        assert identity.expected == {"profile": [True] * 5}
        assert check_expected(identity)
        const = by_name(corpus, "monad:const_terminal(span_to_terminal)")
        assert const.expected == {"profile": [False] * 5}
        assert check_expected(const)

    def test_expected_two_dimensional_profile(self, corpus):
        lifted = by_name(corpus, "pseudomonad:ld(const_terminal(span_to_terminal))")
        assert lifted.expected == {"profile2": [False] * 3}
        assert check_expected(lifted)

    def test_no_twists_when_disabled(self, corpus):
        assert not any("twist" in i.name for i in corpus)


class TestCorpusInstance:
    @pytest.fixture
    def instance(self):
        return CorpusInstance("monad:id", "monad", to_document(identity_monad(walking_arrow())))

    def test_to_dict_omits_missing_expected(self, instance):
        assert "expected" not in instance.to_dict()
        assert instance.value() == identity_monad(walking_arrow())

    def test_instance_without_expected_passes(self, instance):
        assert check_expected(instance)

    def test_wrong_expected_record_fails(self, instance):
        wrong = CorpusInstance(instance.name, instance.kind, instance.payload,
                               {"profile": [False] * 5})
        assert not check_expected(wrong)


class TestWriteCorpus:
    def test_index(self, corpus, tmp_path):
        index = write_corpus(corpus, tmp_path / "corpus")
        entries = json.loads(index.read_text())["instances"]
        assert len(entries) == len(corpus)
        first = entries[0]
        assert first["sha256"] == payload_hash(corpus[0].payload)
        stored = json.loads((index.parent / first["file"]).read_text())
        assert stored["name"] == corpus[0].name
