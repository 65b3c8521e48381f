import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gfomc.query import parse_query
from gfomc.suites import QUERIES

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

HALF = Fraction(1, 2)


@pytest.fixture(scope="session")
def qstar():
    return parse_query(QUERIES["qstar"])


@pytest.fixture(scope="session")
def chain2():
    return parse_query(QUERIES["chain2"])


@pytest.fixture(scope="session")
def forbidden():
    return parse_query(QUERIES["forbidden"])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
