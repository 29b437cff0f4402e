import random

import pytest

from binperm.gf import ctx_new

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ctx2():
    return ctx_new(2)


@pytest.fixture
def rng():
    return random.Random(20240104)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
