from fractions import Fraction as F
from pathlib import Path

import pytest

from rieszhull.mvcore import PointSet, generate_grid

DATA = Path(__file__).parent / "data"

ACCEPTANCE_RESULTS: dict = {}


def record_criterion(number: int, title: str, ok: bool) -> None:
    ACCEPTANCE_RESULTS[number] = (title, ok)
    print(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        title, ok = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def diag():
    return generate_grid(PointSet.default(2), 2, [(F(1, 2), F(1, 2))])


@pytest.fixture
def six():
    return generate_grid(PointSet.default(2), 2, [(F(1, 2), F(0))])


@pytest.fixture
def consts():
    return generate_grid(PointSet.default(2), 1, [])


@pytest.fixture
def luk2():
    return generate_grid(PointSet(("x",)), 2, [(F(1, 2),)])
