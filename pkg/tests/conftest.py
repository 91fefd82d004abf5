"""
Shared fixtures.
"""

import os
from pathlib import Path

import pytest

from src.core import config

os.environ.setdefault("CHOW_PROGRESS", "false")

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def fresh_settings():
    """Every test starts from environment-derived settings."""
    config._settings = None
    yield
    config._settings = None


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def read_data():
    def read(name: str) -> str:
        return (DATA_DIR / name).read_text(encoding="utf-8")

    return read
