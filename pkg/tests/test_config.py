import json
import os
from unittest.mock import patch

import pytest

from kleislikit.config import (
    GUARD_ENV_VAR,
    CorpusConfig,
    EngineConfig,
    get_config,
    load_config,
    resolve,
    set_config,
    with_overrides,
)
from kleislikit.exceptions import ConfigurationError, SizeGuardError


class TestEngineConfig:
    def test_defaults(self):
        config = EngineConfig()
        assert config.enumeration_guard == 10**7
        assert config.uniqueness_guard == 10**5
        assert config.debug_pasting is False

    def test_rejects_non_positive_guard(self):
        with pytest.raises(ConfigurationError, match="enumeration_guard"):
            EngineConfig(enumeration_guard=0)

    def test_rejects_negative_trials(self):
        with pytest.raises(ConfigurationError, match="reassociation_trials"):
            EngineConfig(reassociation_trials=-1)

    def test_check_guard(self):
        config = EngineConfig(enumeration_guard=100)
        config.check_guard(100, "ok")
        with pytest.raises(SizeGuardError) as info:
            config.check_guard(101, "functors")
        assert info.value.to_dict()["search_space"] == 101
        assert info.value.to_dict()["bound"] == 100
        assert info.value.exit_code == 2

    def test_uniqueness_guard(self):
        with pytest.raises(SizeGuardError, match="uniqueness search"):
            EngineConfig(uniqueness_guard=5).check_uniqueness_guard(6, "lifts")

    def test_with_overrides(self):
        config = with_overrides(EngineConfig(), seed=7)
        assert config.seed == 7
        assert config.enumeration_guard == 10**7


class TestCorpusConfig:
    def test_defaults(self):
        corpus = CorpusConfig()
        assert corpus.twist_order == 2
        assert corpus.include_twists

    def test_twist_order_bound(self):
        with pytest.raises(ConfigurationError, match="twist_order"):
            CorpusConfig(twist_order=1)

    def test_negative_bound(self):
        with pytest.raises(ConfigurationError):
            CorpusConfig(max_objects=-1)


class TestLoadConfig:
    @pytest.fixture(autouse=True)
    def clean_env(self):
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop(GUARD_ENV_VAR, None)
            yield
        set_config(None)

    def test_packaged_defaults(self):
        assert load_config() == EngineConfig()

    def test_user_file(self, tmp_path):
        path = tmp_path / "engine.json"
        path.write_text(json.dumps({"enumeration_guard": 50, "seed": 3}))
        config = load_config(path)
        assert config.enumeration_guard == 50
        assert config.seed == 3

    def test_environment_guard(self):
        with patch.dict(os.environ, {GUARD_ENV_VAR: "1234"}):
            assert load_config().enumeration_guard == 1234

    def test_bad_environment_guard(self):
        with patch.dict(os.environ, {GUARD_ENV_VAR: "lots"}):
            with pytest.raises(ConfigurationError, match=GUARD_ENV_VAR):
                load_config()

    def test_overrides_win(self, tmp_path):
        path = tmp_path / "engine.json"
        path.write_text(json.dumps({"enumeration_guard": 50}))
        with patch.dict(os.environ, {GUARD_ENV_VAR: "60"}):
            assert load_config(path, enumeration_guard=70).enumeration_guard == 70
            assert load_config(path, enumeration_guard=None).enumeration_guard == 60

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "engine.json"
        path.write_text(json.dumps({"guard": 5}))
        with pytest.raises(ConfigurationError, match="Unknown config keys"):
            load_config(path)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="Cannot read config"):
            load_config(tmp_path / "missing.json")

    def test_non_object_file(self, tmp_path):
        path = tmp_path / "engine.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigurationError, match="JSON object"):
            load_config(path)

    def test_process_default(self):
        custom = EngineConfig(seed=11)
        set_config(custom)
        assert get_config() is custom
        assert resolve(None) is custom
        assert resolve(EngineConfig()) == EngineConfig()
        set_config(None)
        assert get_config() == EngineConfig()
