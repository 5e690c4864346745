import pytest

from coalform.game import build_game
from coalform.io import generate_matching_pennies, generate_pd
from coalform.partitions import CoalitionStructure

SEP = CoalitionStructure.separated((1, 2))
JOINT = CoalitionStructure.grand((1, 2))


@pytest.fixture(scope="session")
def pd_game():
    return build_game(generate_pd())


@pytest.fixture(scope="session")
def pd_k1():
    return build_game(generate_pd(k=1))


@pytest.fixture(scope="session")
def pennies():
    return build_game(generate_matching_pennies())


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
