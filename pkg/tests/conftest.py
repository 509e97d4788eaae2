import pytest

from homaloidal import parse_type
from homaloidal.enumeration import proper_types


@pytest.fixture(scope="session")
def types_to_12():
    return proper_types(12)


@pytest.fixture
def T():
    return parse_type
