import pytest

import curvedual as cd


@pytest.fixture(scope="session")
def qq():
    return cd.rationals()


@pytest.fixture(scope="session")
def f2():
    return cd.prime_field(2)


@pytest.fixture(scope="session")
def f5():
    return cd.prime_field(5)


@pytest.fixture(scope="session")
def named(qq):
    return {name: cd.named_ring(qq, name) for name in cd.curve_names()}


@pytest.fixture(scope="session")
def cusp(named):
    return named["cusp"]


@pytest.fixture(scope="session")
def node(named):
    return named["node"]


@pytest.fixture(scope="session")
def tacnode(named):
    return named["tacnode"]


@pytest.fixture(scope="session")
def r345(qq):
    return cd.build(cd.semigroup_spec(qq, (3, 4, 5)))
