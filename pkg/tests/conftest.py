import random
from pathlib import Path

import pytest

from app.core.config import get_settings
from app.features.presio.service import load_presentation

FIXTURES = Path(__file__).resolve().parent.parent / get_settings().FIXTURES_DIR


@pytest.fixture
def fixture_path():
    def _path(name: str) -> str:
        return str(FIXTURES / name)
    return _path


@pytest.fixture
def load_fixture():
    def _load(name: str):
        return load_presentation(str(FIXTURES / name))
    return _load


@pytest.fixture
def rng():
    return random.Random(20240611)
