import os

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SHANKSLIFT_CACHE_DIR", str(tmp_path / "cache"))
    yield


def pytest_report_header(config):
    return f"shankslift tests (cwd {os.getcwd()})"
