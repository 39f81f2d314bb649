import pytest

from revlogic.designs import build_full_addsub, build_half_addsub


@pytest.fixture
def half():
    return build_half_addsub()


@pytest.fixture
def full():
    return build_full_addsub()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
