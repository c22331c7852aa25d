import pytest

from caylabel.enumeration import enumerate_semigroups


@pytest.fixture(scope="session")
def small_semigroups():
    """Every labelled semigroup of order 1..4."""
    return [S for n in range(1, 5) for S in enumerate_semigroups(n)]


@pytest.fixture(scope="session")
def semigroups_upto3():
    return [S for n in range(1, 4) for S in enumerate_semigroups(n)]
