import pytest

from ranslicer.builtin import builtin_catalog, reference_requests
from ranslicer.planner import PlannerConfig
from ranslicer.radio import default_policy
from ranslicer.topology import reference_area


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def area():
    return reference_area()


@pytest.fixture(scope="session")
def policy():
    return default_policy()


@pytest.fixture(scope="session")
def requests():
    return reference_requests()


@pytest.fixture
def config():
    return PlannerConfig()
