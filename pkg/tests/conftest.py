import pytest
from hypothesis import settings

from curveforge.gf import field_of_order

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_Q = (2, 3, 4, 5, 7, 8, 9)


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def field(request):
    return field_of_order(request.param)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
