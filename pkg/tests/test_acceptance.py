"""The fifteen acceptance criteria, each run exactly and reported on one line."""

import pytest

from mcgkit.checks import CRITERIA, run_check

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"{c[0]:02d}-{c[1].replace(' ', '-')}" for c in CRITERIA])
def test_criterion(number):
    res = run_check(number)
    line = res.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert res.passed, "\n".join(res.details)
