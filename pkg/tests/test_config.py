import pathlib

import pytest

from path_games.config import Settings
from path_games.errors import ConfigurationError


@pytest.fixture
def settings_file(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "settings.yml"
    path.write_text("max_iterations: 50\nlog_format: text\n", encoding="utf-8")
    return path


def test_defaults() -> None:
    """Test the documented defaults."""
    settings = Settings()
    assert settings.brute_force_cap == 16
    assert not settings.allow_large
    assert settings.log_level == "warning"
    assert settings.log_format == "json"


def test_as_env() -> None:
    """Test conversion to environment variables."""
    env = Settings(allow_large=True, max_iterations=7).as_env()
    assert env["PATH_GAMES_ALLOW_LARGE"] == "true"
    assert env["PATH_GAMES_MAX_ITERATIONS"] == "7"
    assert env["PATH_GAMES_LOG_FORMAT"] == "json"


def test_from_env_round_trip() -> None:
    """Settings survive conversion to environment variables and back."""
    settings = Settings(allow_large=True, brute_force_cap=20, log_level="debug")
    assert Settings.from_env(settings.as_env()) == settings


def test_from_env_ignores_unrelated_variables() -> None:
    """Only ``PATH_GAMES_*`` variables are read."""
    assert Settings.from_env({"HOME": "/root", "PATH_GAMES_MAX_ITERATIONS": "3"}) == Settings(max_iterations=3)


def test_from_env_rejects_bad_values() -> None:
    """Test invalid environment values raise a configuration error."""
    with pytest.raises(ConfigurationError, match="environment"):
        Settings.from_env({"PATH_GAMES_BRUTE_FORCE_CAP": "0"})


def test_from_yaml_layers_over_base(settings_file: pathlib.Path) -> None:
    """YAML keys override the base settings and leave the rest alone."""
    settings = Settings.from_yaml(settings_file, base=Settings(allow_large=True))
    assert settings.max_iterations == 50
    assert settings.log_format == "text"
    assert settings.allow_large


def test_from_yaml_reads_environment_by_default(
    settings_file: pathlib.Path,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """Without a base the environment supplies what the YAML omits."""
    monkeypatch.setenv("PATH_GAMES_BRUTE_FORCE_CAP", "4")
    settings = Settings.from_yaml(settings_file)
    assert (settings.brute_force_cap, settings.max_iterations) == (4, 50)


def test_empty_yaml_keeps_base(tmp_path: pathlib.Path) -> None:
    path = tmp_path / "empty.yml"
    path.write_text("", encoding="utf-8")
    assert Settings.from_yaml(path, base=Settings()) == Settings()


@pytest.mark.parametrize(
    ("content", "message"),
    [
        ("- 1\n- 2\n", "mapping"),
        ("unknown_field: 1\n", "Invalid settings"),
        ("log_level: loud\n", "Invalid settings"),
        ("max_iterations: [\n", "Could not read"),
    ],
)
def test_from_yaml_rejects(tmp_path: pathlib.Path, content: str, message: str) -> None:
    """Test unreadable or invalid YAML is reported."""
    path = tmp_path / "settings.yml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ConfigurationError, match=message):
        Settings.from_yaml(path, base=Settings())


def test_missing_file(tmp_path: pathlib.Path) -> None:
    with pytest.raises(ConfigurationError, match="Could not read"):
        Settings.from_yaml(tmp_path / "nope.yml", base=Settings())


def test_updated_ignores_none() -> None:
    """Unset overrides keep the current value and updates are validated."""
    settings = Settings().updated(allow_large=None, log_level="info")
    assert settings.log_level == "info"
    assert not settings.allow_large
    with pytest.raises(ConfigurationError):
        Settings().updated(max_iterations=0)


def test_settings_are_frozen() -> None:
    settings = Settings()
    with pytest.raises(ValueError, match="frozen"):
        settings.max_iterations = 3  # type: ignore[misc]
