import pytest

from ordtower import AAOrders, Tower, parse_ordinal


@pytest.fixture(scope="session")
def tower():
    return Tower()


@pytest.fixture(scope="session")
def orders():
    return AAOrders()


@pytest.fixture(scope="session")
def p():
    return parse_ordinal
