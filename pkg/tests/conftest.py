import pytest

from cantorcap.measure import DepthDependent, Regular, UNIFORM
from cantorcap.rational import mpq

QUARTER = Regular(mpq(1, 4), mpq(1, 4), mpq(1, 2))
DEPTH_SPEC = DepthDependent(((mpq(1, 2), mpq(1, 2), mpq(0)),), (mpq(1, 3), mpq(1, 3), mpq(1, 3)))

ACCEPTANCE_LINES = []


@pytest.fixture
def uniform():
    return UNIFORM


@pytest.fixture
def quarter():
    return QUARTER


@pytest.fixture(params=[UNIFORM, QUARTER, DEPTH_SPEC], ids=["uniform", "quarter", "depth"])
def spec(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
