import os

import pytest
from hypothesis import HealthCheck, settings

from nearvec.space import make_space

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", max_examples=15, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, one-line detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    def record(number: int, passed: bool, detail: str):
        ACCEPTANCE[number] = (passed, detail)
        assert passed, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def f5_13():
    return make_space(5, (1, 3))


@pytest.fixture(scope="session")
def f7_15():
    return make_space(7, (1, 5))


@pytest.fixture(scope="session")
def f4_12():
    return make_space(2, (1, 2), n=2)


@pytest.fixture(scope="session")
def f9_13():
    return make_space(3, (1, 3), n=2)
