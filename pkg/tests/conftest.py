import pytest

from corpus import UNIQUE_EXAMPLE, AMBIGUOUS_EXAMPLE


@pytest.fixture
def unique_example():
    return UNIQUE_EXAMPLE


@pytest.fixture
def ambiguous_example():
    return AMBIGUOUS_EXAMPLE


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
