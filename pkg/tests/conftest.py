import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from imbalance import build_inverse, build_power, make_field  # noqa: E402


@pytest.fixture(scope="session")
def gf8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def cube8(gf8):
    return build_power(gf8, 3)


@pytest.fixture(scope="session")
def inv16():
    return build_inverse(make_field(2, 4))


@pytest.fixture(scope="session")
def square9():
    return build_power(make_field(3, 2), 2)


def pytest_terminal_summary(terminalreporter):
    from summary import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
