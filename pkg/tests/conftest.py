import numpy as np
import pytest
from hypothesis import settings

from etpa._backend import available_backends

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Record one summary line for an acceptance criterion.

    Call ``acceptance(label, passed, detail)``; the line is printed at the
    end of the session whether or not the test body later fails.
    """
    def record(label, passed, detail):
        _ACCEPTANCE[label] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s[1:])):
        passed, detail = _ACCEPTANCE[label]
        terminalreporter.write_line(f"{label} {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
