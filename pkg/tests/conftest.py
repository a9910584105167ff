"""Shared fixtures: common spaces, fields, and the criterion recorder."""
from __future__ import annotations

from fractions import Fraction

import pytest

from sigmalab import new_space, pentagon_fields, uniform_space

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def criterion():
    """Record one pass/fail line per acceptance criterion.

    The line is registered before the assertions fire, so a failing
    criterion still prints its status in the terminal summary.
    """

    def record(num: int, ok: bool, label: str, elapsed: float, budget: float) -> None:
        status = "PASS" if ok and elapsed < budget else "FAIL"
        ACCEPTANCE_LINES.append(
            f"[criterion {num:2d}] {status}  {label}  "
            f"({elapsed:.2f}s, budget {budget:g}s)"
        )

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def u4():
    return uniform_space(4)


@pytest.fixture
def w4():
    return new_space(
        [Fraction(1, 10), Fraction(2, 10), Fraction(3, 10), Fraction(4, 10)]
    )


@pytest.fixture
def pentagon_u4(u4):
    return pentagon_fields(u4)


@pytest.fixture
def pentagon_w4(w4):
    return pentagon_fields(w4)
