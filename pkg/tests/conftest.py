import sys

import pytest
from hypothesis import settings

from klrwb.root_datum import standard_quiver

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(params=["sl2", "A1xA1", "A2", "A3", "Kronecker"])
def any_quiver(request):
    return standard_quiver(request.param)


@pytest.fixture
def a2():
    return standard_quiver("A2")


@pytest.fixture
def sl2():
    return standard_quiver("sl2")


@pytest.fixture
def kron():
    return standard_quiver("Kronecker")


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=int):
        terminalreporter.write_line(results[key])
