import os
from pathlib import Path

import pytest

GOLDEN_ENV = "CHAINSYZ_GOLDEN_DIR"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return Path(os.environ.get(GOLDEN_ENV, Path(__file__).parent / "golden"))
