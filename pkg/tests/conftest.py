import pytest
from hypothesis import settings

from coopshare.game import TuGame, from_exchange
from coopshare.verification import EXAMPLE_1, EXAMPLE_2, EXAMPLE_3

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def example1():
    return from_exchange(EXAMPLE_1)


@pytest.fixture
def example2():
    return from_exchange(EXAMPLE_2)


@pytest.fixture
def example3():
    return EXAMPLE_3


@pytest.fixture
def zero_game():
    return TuGame(3, (0,) * 8)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
