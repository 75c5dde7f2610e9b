import mpmath as mp
import pytest

from latticelab.context import PrecisionContext


@pytest.fixture
def ctx():
    return PrecisionContext(25)


def close(a, b, digits):
    """|a - b| <= 10^-digits * max(1, |a|)."""
    with mp.workdps(max(mp.mp.dps, digits + 20)):
        a, b = mp.mpmathify(a), mp.mpmathify(b)
        return abs(a - b) <= mp.mpf(10) ** (-digits) * max(1, abs(a))


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
