"""
Unit tests for qcarleson.core.config module.
"""

import pytest
import yaml

from qcarleson.core.config import (
    CONFIG_PATH,
    DEFAULT_GRIDS,
    ConfigInvalid,
    ConfigManager,
)


class TestConfigManager:
    """Tests for ConfigManager class."""

    def test_default_path(self):
        assert ConfigManager().path == CONFIG_PATH

    def test_load_missing_file(self, temp_dir):
        assert ConfigManager(temp_dir / "none.yaml").load() == {}

    def test_init_does_not_create_files(self, temp_dir, change_cwd):
        ConfigManager()
        assert not (temp_dir / ".qcarleson").exists()

    def test_load_returns_config_from_file(self, config_file):
        config = ConfigManager(config_file).load()
        assert config["grids"]["n_i"] == 24
        assert config["monte_carlo"]["seed"] == 7

    def test_bad_yaml(self, temp_dir):
        path = temp_dir / "config.yaml"
        path.write_text("grids: [unclosed\n")
        with pytest.raises(ConfigInvalid):
            ConfigManager(path).load()

    def test_non_mapping(self, temp_dir):
        path = temp_dir / "config.yaml"
        path.write_text("- a\n- b\n")
        with pytest.raises(ConfigInvalid):
            ConfigManager(path).load()

    def test_section_must_be_mapping(self, temp_dir):
        path = temp_dir / "config.yaml"
        path.write_text("grids: 3\n")
        with pytest.raises(ConfigInvalid):
            ConfigManager(path).effective()

    def test_save_creates_directory(self, temp_dir):
        path = temp_dir / ".qcarleson" / "config.yaml"
        ConfigManager(path).save({"monte_carlo": {"seed": 1}})
        assert yaml.safe_load(path.read_text()) == {"monte_carlo": {"seed": 1}}


class TestEffectiveConfig:
    """Tests for default merging."""

    def test_defaults_fill_missing_keys(self, config_file):
        grids = ConfigManager(config_file).get_grid_config()
        assert grids["n_i"] == 24
        assert grids["n_r"] == DEFAULT_GRIDS["n_r"]
        assert grids["tube_radius"] == DEFAULT_GRIDS["tube_radius"]

    def test_nested_defaults(self, config_file):
        suite = ConfigManager(config_file).get_suite_config()
        assert suite["workers"] == 1
        assert suite["counterexample"]["eps"] == 0.5

    def test_unknown_sections_kept(self, temp_dir):
        path = temp_dir / "config.yaml"
        path.write_text("notes: {author: someone}\n")
        assert ConfigManager(path).effective()["notes"] == {"author": "someone"}

    def test_defaults_are_not_mutated(self, temp_dir):
        manager = ConfigManager(temp_dir / "config.yaml")
        manager.get_grid_config()["n_i"] = -1
        assert DEFAULT_GRIDS["n_i"] != -1
        assert manager.get_grid_config()["n_i"] == DEFAULT_GRIDS["n_i"]


class TestValues:
    """Tests for dot-notation access."""

    @pytest.fixture
    def manager(self, temp_dir) -> ConfigManager:
        return ConfigManager(temp_dir / ".qcarleson" / "config.yaml")

    def test_get_default(self, manager):
        assert manager.get_value("grids.n_i") == DEFAULT_GRIDS["n_i"]
        assert manager.get_value("grids.missing") is None

    @pytest.mark.parametrize("raw,parsed", [
        ("400", 400),
        ("0.25", 0.25),
        ("true", True),
        ("off", False),
        ("none", None),
        ("0,0.5,0.9", [0, 0.5, 0.9]),
        ("fast", "fast"),
    ])
    def test_set_parses(self, manager, raw, parsed):
        manager.set_value("grids.value", raw)
        assert manager.get_value("grids.value") == parsed

    def test_set_stores_only_override(self, manager):
        manager.set_value("grids.n_i", "400")
        assert manager.load() == {"grids": {"n_i": 400}}

    def test_unset(self, manager):
        manager.set_value("monte_carlo.seed", "3")
        assert manager.unset_value("monte_carlo.seed")
        assert manager.get_value("monte_carlo.seed") != 3
        assert not manager.unset_value("monte_carlo.seed")
        assert not manager.unset_value("nothing.here")

    def test_get_section_scalar(self, manager):
        assert manager.get_section("grids.n_i") == {"n_i": DEFAULT_GRIDS["n_i"]}

    def test_list_keys(self, manager):
        assert "n_theta" in manager.list_keys("grids")
        assert "logging" in manager.list_keys()


class TestSuiteSettings:
    """Tests for the worker override and log level."""

    def test_workers_env(self, config_file, mock_env):
        mock_env(QCARLESON_WORKERS="4")
        assert ConfigManager(config_file).get_suite_config()["workers"] == 4

    def test_workers_env_not_integer(self, config_file, mock_env):
        mock_env(QCARLESON_WORKERS="x")
        with pytest.raises(ConfigInvalid):
            ConfigManager(config_file).get_suite_config()

    def test_workers_must_be_positive(self, temp_dir, mock_env):
        mock_env(QCARLESON_WORKERS=None)
        path = temp_dir / "config.yaml"
        path.write_text("suite: {workers: 0}\n")
        with pytest.raises(ConfigInvalid):
            ConfigManager(path).get_suite_config()

    def test_log_level(self, config_file):
        manager = ConfigManager(config_file)
        assert manager.get_log_level() == "WARNING"
        manager.set_log_level("debug")
        assert manager.get_log_level() == "DEBUG"

    def test_invalid_log_level(self, config_file):
        with pytest.raises(ValueError):
            ConfigManager(config_file).set_log_level("LOUD")
