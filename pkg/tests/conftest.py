import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from latsum import build_sieve


@pytest.fixture(scope="session")
def sieve_10k():
    return build_sieve(10_000)
