import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dnumbers import case_study  # noqa: E402
from dnumbers.verify import load_golden  # noqa: E402


@pytest.fixture(scope="session")
def golden():
    return load_golden()


@pytest.fixture(scope="session")
def problem():
    return case_study()
