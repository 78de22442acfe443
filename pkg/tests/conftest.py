import pytest

from helpers import FIXTURE_PATH

from fuzzyqp import parse_problem


@pytest.fixture(scope="session")
def example_problem():
    return parse_problem(FIXTURE_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fixture_text():
    return FIXTURE_PATH.read_text(encoding="utf-8")
