import random

import pytest
from hypothesis import HealthCheck, settings

from liefaith.lie import LieAlgebra, heisenberg, standard_filiform

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def fil4() -> LieAlgebra:
    # [x1, x2] = x3, [x1, x3] = x4
    return standard_filiform(4)


@pytest.fixture
def heis() -> LieAlgebra:
    return heisenberg(1)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
