import random

import pytest

from mcgkit.surface import SurfaceContext

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(7)


@pytest.fixture(params=[1, 2, 3])
def ctx(request):
    return SurfaceContext(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
