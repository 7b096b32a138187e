import pytest

from movoid.core.logging import configure_logging
from movoid.geometry.polar import polar_space
from movoid.models.enums import SearchStatus
from movoid.services.ovoid import WeightFunction
from movoid.services.search import SearchInstance, search_m_ovoids


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    configure_logging("WARNING")


@pytest.fixture(scope="session")
def w32():
    """W(3,2): 15 points, 15 lines."""
    return polar_space("W", 2, 2)


@pytest.fixture(scope="session")
def w33():
    return polar_space("W", 2, 3)


@pytest.fixture(scope="session")
def w52():
    return polar_space("W", 3, 2)


@pytest.fixture(scope="session")
def q52():
    """Q-(5,2): 27 points, 45 lines."""
    return polar_space("Q-", 2, 2)


@pytest.fixture(scope="session")
def q53():
    """Q-(5,3): 112 points, 280 lines."""
    return polar_space("Q-", 2, 3)


@pytest.fixture(scope="session")
def q72():
    return polar_space("Q-", 3, 2)


@pytest.fixture(scope="session")
def h44():
    """H(4,4): 165 points, 297 lines."""
    return polar_space("H", 2, 4)


@pytest.fixture(scope="session")
def w32_ovoid(w32):
    outcome = search_m_ovoids(SearchInstance(w32, 1))
    assert outcome.status == SearchStatus.SOLUTIONS_FOUND
    return WeightFunction.from_points(w32, outcome.solutions[0])


@pytest.fixture(scope="session")
def hemisystem(q53):
    """A 2-ovoid of Q-(5,3), found by search."""
    outcome = search_m_ovoids(SearchInstance(q53, 2))
    assert outcome.status == SearchStatus.SOLUTIONS_FOUND
    return WeightFunction.from_points(q53, outcome.solutions[0])
