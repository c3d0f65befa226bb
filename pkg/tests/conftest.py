from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fig2_dir() -> Path:
    return FIXTURES / "fig2"


@pytest.fixture
def kg20_dir() -> Path:
    return FIXTURES / "kg20"


@pytest.fixture
def batch20_dir() -> Path:
    return FIXTURES / "batch20"
