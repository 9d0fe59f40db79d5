import sys

import pytest
from hypothesis import settings

from maninlab.double import Double
from maninlab.liealg import build_type_A

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def sl2():
    return build_type_A(1)


@pytest.fixture(scope="session")
def sl3():
    return build_type_A(2)


@pytest.fixture(scope="session")
def D1():
    return Double(build_type_A(1))


@pytest.fixture(scope="session")
def D2():
    return Double(build_type_A(2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for k in sorted(verdicts):
            terminalreporter.write_line(verdicts[k])
