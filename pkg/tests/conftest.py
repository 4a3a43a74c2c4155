import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture
def rng():
    return random.Random(0x5EED)


def acceptance_n(default: int) -> int:
    """Sample count for an acceptance criterion.

    P256_ACCEPT_SCALE scales the expensive loops down for smoke runs;
    the default (1.0) runs the full counts.
    """
    scale = float(os.environ.get("P256_ACCEPT_SCALE", "1.0"))
    return max(8, round(default * scale))
