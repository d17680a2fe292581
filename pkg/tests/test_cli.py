import importlib
import json
from unittest.mock import patch

import pytest

from kleislikit.abskl1 import CodescentProfile, kleisli_abskl
from kleislikit.abskl2 import unit_morphism
from kleislikit.cli import create_parser, dump_path, main, run_report
from kleislikit.cli.serialization import category_to_dict
from kleislikit.fincat import span_to_terminal, terminal_cat, walking_arrow
from kleislikit.monadkit import const_terminal_monad, identity_monad
from kleislikit.pseudomonadkit import identity_pseudomonad
from kleislikit.twocat import locally_discrete


class TestRunReport:
    @pytest.fixture
    def identity_file(self, tmp_path):
        path = tmp_path / "identity_monad.json"
        dump_path(identity_monad(walking_arrow()), path)
        return path

    @pytest.fixture
    def const_file(self, tmp_path):
        path = tmp_path / "const_terminal.json"
        dump_path(const_terminal_monad(span_to_terminal()), path)
        return path

    def test_profile_of_identity_monad(self, identity_file):
        code, report = run_report("check", [str(identity_file)], {"profile": True})
        assert code == 0
        assert report["conditions"] == [True] * 5
        assert report["agree"] is True

    def test_profile_of_const_terminal(self, const_file):
        code, report = run_report("check", [str(const_file)], {"profile": True})
        assert code == 0
        assert report["conditions"] == [False] * 5
        assert report["agree"] is True

    def test_check_without_profile(self, const_file):
        code, report = run_report("check", [str(const_file)])
        assert code == 0
        assert report["conditions"] == {"codescent_type": False}

    def test_check2(self, tmp_path):
        path = tmp_path / "pseudomonad.json"
        dump_path(identity_pseudomonad(locally_discrete(terminal_cat())), path)
        code, report = run_report("check2", [str(path)], {"profile": True})
        assert code == 0
        assert report["conditions"] == [True] * 3

    def test_disagreement_exit_code(self, identity_file):
        disagreeing = CodescentProfile((True, False, True, True, True))
        with patch.object(
            importlib.import_module("kleislikit.cli.main"),
            "check_codescent_profile",
            return_value=disagreeing,
        ):
            code, report = run_report("check", [str(identity_file)], {"profile": True})
        assert code == 3
        assert report["ok"] is False
        assert report["agree"] is False

    def test_validate_good_category(self, tmp_path):
        path = tmp_path / "arrow.json"
        dump_path(walking_arrow(), path)
        code, report = run_report("validate", [str(path)])
        assert code == 0
        assert report["ok"] is True

    def test_validate_broken_category(self, tmp_path):
        data = category_to_dict(walking_arrow())
        data["compose"] = [
            [a, b, "id_a" if (a, b) == ("id_a", "f") else c] for a, b, c in data["compose"]
        ]
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(data))
        code, report = run_report("validate", [str(path)])
        assert code == 1
        assert report["ok"] is False
        assert report["violations"]

    def test_unknown_document_kind(self, tmp_path):
        path = tmp_path / "odd.json"
        path.write_text(json.dumps({"kind": "sheaf"}))
        code, report = run_report("validate", [str(path)])
        assert code == 2
        assert report["error"]["code"] == "SERIALIZATION_ERROR"
        assert "sheaf" in report["error"]["message"]

    def test_wrong_kind_for_command(self, tmp_path):
        path = tmp_path / "arrow.json"
        dump_path(walking_arrow(), path)
        code, report = run_report("check", [str(path)])
        assert code == 2
        assert "Expected a monad document" in report["error"]["message"]

    def test_unknown_command(self):
        code, report = run_report("prove", [])
        assert code == 2
        assert report["error"]["code"] == "UNKNOWN_COMMAND"

    def test_guard_exit_code(self, identity_file):
        code, report = run_report("check", [str(identity_file)], {"guard": 1})
        assert code == 2
        assert report["error"]["code"] == "SIZE_GUARD"

    def test_reflect_writes_three_documents(self, const_file, tmp_path):
        out = tmp_path / "reflected"
        code, report = run_report("reflect", [str(const_file)], {"out": str(out)})
        assert code == 0
        assert len(report["files"]) == 3
        for name, kind in (("abskl.json", "abskl1"), ("monad.json", "monad"),
                           ("comorphism.json", "comorphism")):
            assert json.loads((out / name).read_text())["kind"] == kind

    def test_reflect_needs_out(self, const_file):
        code, report = run_report("reflect", [str(const_file)])
        assert code == 2
        assert "--out" in report["error"]["message"]

    def test_kleisli_construction(self, const_file):
        code, report = run_report("kleisli", [str(const_file)])
        assert code == 0
        assert len(report["result"]["category"]["morphisms"]) == 9

    def test_eilenberg_moore_construction(self, identity_file):
        code, report = run_report("em", [str(identity_file)])
        assert code == 0
        category = report["result"]["category"]
        assert len(category["objects"]) == 2
        assert len(category["morphisms"]) == 3

    def test_eilenberg_moore_needs_a_monad(self, tmp_path):
        path = tmp_path / "arrow.json"
        dump_path(walking_arrow(), path)
        code, report = run_report("em", [str(path)])
        assert code == 2
        assert "Expected a monad document" in report["error"]["message"]


class TestThunkableCommand:
    @pytest.fixture
    def abskl_file(self, tmp_path):
        path = tmp_path / "abskl.json"
        dump_path(kleisli_abskl(const_terminal_monad(span_to_terminal())), path)
        return path

    def test_identity_is_thunkable(self, abskl_file):
        s = kleisli_abskl(const_terminal_monad(span_to_terminal()))
        identity = s.base.identity(s.base.objects[0])
        code, report = run_report("thunkable", [str(abskl_file), identity])
        assert code == 0
        assert report["conditions"]["thunkable"] is True

    def test_unknown_morphism(self, abskl_file):
        code, report = run_report("thunkable", [str(abskl_file), "nope"])
        assert code == 2
        assert report["error"]["code"] == "UNKNOWN_ID"


class TestTwoDimensionalCommands:
    @pytest.fixture
    def trivial(self):
        return identity_pseudomonad(locally_discrete(terminal_cat()))

    @pytest.fixture
    def trivial_file(self, tmp_path, trivial):
        path = tmp_path / "pseudomonad.json"
        dump_path(trivial, path)
        return path

    def test_cones(self, trivial_file):
        code, report = run_report("cones", [str(trivial_file), "*", "*"])
        assert code == 0
        assert len(report["witnesses"]) == 1
        assert report["conditions"]["canonical_equivalence"] is True

    def test_cones_arity(self, trivial_file):
        code, report = run_report("cones", [str(trivial_file), "*"])
        assert code == 2
        assert report["error"]["code"] == "SERIALIZATION_ERROR"
        assert "usage" in report["error"]["message"]

    def test_isobidescent(self, trivial_file):
        code, report = run_report("isobidescent", [str(trivial_file)])
        assert code == 0
        assert report["conditions"]["isobidescent"] is True

    def test_isobidescent_needs_a_pseudomonad(self, tmp_path):
        path = tmp_path / "identity_monad.json"
        dump_path(identity_monad(terminal_cat()), path)
        code, report = run_report("isobidescent", [str(path)])
        assert code == 2
        assert "Expected a pseudomonad document" in report["error"]["message"]

    def test_lift_unit_morphism(self, tmp_path, trivial):
        path = tmp_path / "unit.json"
        dump_path(unit_morphism(trivial), path)
        code, report = run_report("lift", [str(path)])
        assert code == 0
        assert report["conditions"]["unique_lift"] is True
        assert len(report["witnesses"]) == 1

    def test_lift_needs_a_klext_document(self, trivial_file):
        code, report = run_report("lift", [str(trivial_file)])
        assert code == 2
        assert "Expected a klext document" in report["error"]["message"]


class TestCorpusCommand:
    def test_default_corpus_passes_its_checks(self, tmp_path):
        code, report = run_report("corpus", [], {"out": str(tmp_path), "check": True})
        assert code == 0
        assert report["ok"] is True
        assert report["violations"] == []
        assert report["result"]["instances"] > 0
        index = json.loads((tmp_path / "index.json").read_text())
        assert report["files"] == [str(tmp_path / "index.json")]
        assert len(index["instances"]) == report["result"]["instances"]

    def test_corpus_needs_out(self):
        code, report = run_report("corpus", [])
        assert code == 2
        assert "--out" in report["error"]["message"]


class TestMain:
    def test_parser(self):
        argv = ["--guard", "5", "check", "--profile", "m.json"]
        args = create_parser().parse_intermixed_args(argv)
        assert args.guard == 5
        assert args.command == "check"
        assert args.paths == ["m.json"]
        assert args.profile

    def test_main_prints_report(self, tmp_path, capsys):
        path = tmp_path / "identity_monad.json"
        dump_path(identity_monad(terminal_cat()), path)
        assert main(["--quiet", "check", "--profile", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "check"
        assert report["conditions"] == [True] * 5
