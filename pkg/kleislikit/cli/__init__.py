"""
Serialization, the instance corpus and the command-line front end.
"""
from .corpus import (
    KINDS,
    CorpusInstance,
    check_expected,
    corpus_digest,
    generate_corpus,
    write_corpus,
)
from .main import COMMANDS, create_parser, main, run_report
from .serialization import (
    READERS,
    canonical_dumps,
    dump_path,
    dumps,
    from_document,
    load_path,
    loads,
    payload_hash,
    to_document,
)

__all__ = [
    # Main classes
    "CorpusInstance",
    # Operations
    "generate_corpus",
    "check_expected",
    "write_corpus",
    "corpus_digest",
    "run_report",
    "create_parser",
    "main",
    "to_document",
    "from_document",
    "dumps",
    "loads",
    "canonical_dumps",
    "payload_hash",
    "load_path",
    "dump_path",
    # Tables
    "KINDS",
    "COMMANDS",
    "READERS",
]
