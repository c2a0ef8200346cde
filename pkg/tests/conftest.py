import pytest

from lqres.field import QQ, PrimeField
from lqres.poly import Ring


@pytest.fixture(params=[QQ, PrimeField(32003)], ids=["QQ", "GF32003"])
def field(request):
    return request.param


@pytest.fixture
def R2():
    return Ring(["x", "y"])


@pytest.fixture
def R3():
    return Ring(["x", "y", "z"])


@pytest.fixture
def R4():
    return Ring(["x", "y", "z", "w"])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"criterion {key} {'PASS' if ok else 'FAIL'} {detail}")
