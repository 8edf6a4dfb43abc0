import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from orthosps.bundle import load_fixture  # noqa: E402

EXAMPLE_XI = {
    "p": {"3", "6", "7", "9", "10"},
    "q": {"2", "4", "5", "8", "10"},
    "r": {"6", "9", "10"},
    "s": {"5", "8", "10"},
    "t": {"7", "9", "10"},
    "u": {"4", "8", "10"},
}
EXAMPLE_ELEMENTS = [str(i) for i in range(1, 11)]


@pytest.fixture
def example():
    return load_fixture("example.ossp").to_osps()


@pytest.fixture
def triv2():
    return load_fixture("triv2.ossp").to_osps()


@pytest.fixture
def diamond():
    return load_fixture("diamond.ossp").to_osps()


@pytest.fixture
def chain3():
    return load_fixture("chain3.ossp").to_osps()


@pytest.fixture
def m3():
    return load_fixture("m3.ossp").to_osps()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
