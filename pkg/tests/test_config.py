import json
import os

import pytest

from polyverify.config import Settings, load_settings
from polyverify.exceptions import ConfigError


def test_defaults(clean_env):
    settings = load_settings()
    assert settings == Settings()
    assert settings.workers == 1
    assert settings.digits == 60
    assert settings.cusp_budget == 400


def test_config_file(clean_env):
    path = clean_env / "settings.json"
    path.write_text(json.dumps({"kmax": 12, "digits": 40}))
    settings = load_settings(str(path))
    assert settings.kmax == 12
    assert settings.digits == 40


def test_environment_beats_file(clean_env, monkeypatch):
    path = clean_env / "settings.json"
    path.write_text(json.dumps({"workers": 2}))
    monkeypatch.setenv("POLYVERIFY_WORKERS", "3")
    assert load_settings(str(path)).workers == 3


def test_overrides_beat_environment(clean_env, monkeypatch):
    monkeypatch.setenv("POLYVERIFY_DIGITS", "50")
    assert load_settings(digits=80).digits == 80
    assert load_settings(digits=None).digits == 50


def test_dotenv_file(clean_env):
    (clean_env / ".env").write_text("POLYVERIFY_OUTPUT_DIR=from-dotenv\n")
    try:
        assert load_settings().output_dir == "from-dotenv"
    finally:
        os.environ.pop("POLYVERIFY_OUTPUT_DIR", None)


@pytest.mark.parametrize(
    "content",
    ["{not json", "[1, 2]", json.dumps({"unknown": 1}), json.dumps({"workers": 0}), json.dumps({"digits": 10})],
)
def test_invalid_file(clean_env, content):
    path = clean_env / "settings.json"
    path.write_text(content)
    with pytest.raises(ConfigError):
        load_settings(str(path))


def test_missing_file(clean_env):
    with pytest.raises(ConfigError) as exc:
        load_settings(str(clean_env / "absent.json"))
    assert exc.value.source.endswith("absent.json")


def test_bad_environment_value(clean_env, monkeypatch):
    monkeypatch.setenv("POLYVERIFY_WORKERS", "many")
    with pytest.raises(ConfigError):
        load_settings()


def test_settings_are_frozen():
    with pytest.raises(Exception):
        Settings().workers = 4
