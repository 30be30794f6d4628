import sys

import pytest

from kmface.gcm import builtin


@pytest.fixture(scope="session")
def a1():
    return builtin("a1")


@pytest.fixture(scope="session")
def a2():
    return builtin("a2")


@pytest.fixture(scope="session")
def b2():
    return builtin("b2")


@pytest.fixture(scope="session")
def aff():
    return builtin("aff")


@pytest.fixture(scope="session")
def hyp3():
    return builtin("hyp3")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number][1])
