import pytest

from helpers import ACCEPTANCE_LINES, engine_win_frequencies


@pytest.fixture
def engine_frequencies():
    return engine_win_frequencies


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
