"""
conftest.py
Fixtures compartidas: diseños del catálogo y settings limpios por test.
"""

import random
from pathlib import Path

import pytest

from dirdesign.config import get_settings
from dirdesign.infra.catalog import catalog_design


@pytest.fixture(autouse=True)
def fresh_settings():
    """Cada test lee las variables de entorno de nuevo."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def dd4():
    return catalog_design("dd-4")


@pytest.fixture
def dd7():
    return catalog_design("dd-7")


@pytest.fixture
def dd10():
    return catalog_design("dd-10")


@pytest.fixture
def dd13():
    return catalog_design("dd-13")


def random_permutation(v: int, seed: int) -> dict[int, int]:
    images = list(range(v))
    random.Random(seed).shuffle(images)
    return dict(enumerate(images))


def to_block(text: str) -> tuple[int, ...]:
    """'0132' -> (0, 1, 3, 2); solo para v <= 10."""
    return tuple(int(c) for c in text)


@pytest.fixture
def fixtures_dir() -> Path:
    """GDD maestros que el toolkit no construye solo."""
    return Path(__file__).parent / "fixtures"
