"""Shared fixtures and the --runslow switch."""

import pytest

from polyverify.config import Settings
from polyverify.models import FormSpec

SUPPORTED = (7, 9, 10, 11, 12, 13, 14)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run full-size sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(params=SUPPORTED)
def polygon(request):
    return request.param


@pytest.fixture
def form7():
    return FormSpec.for_polygon(7)


@pytest.fixture
def settings(tmp_path):
    return Settings(output_dir=str(tmp_path))


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    for name in ("POLYVERIFY_WORKERS", "POLYVERIFY_DIGITS", "POLYVERIFY_OUTPUT_DIR"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path
