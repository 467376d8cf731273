import pytest

from finact import Act, ActMap, FiniteMonoid, point_act, regular_act, subact


@pytest.fixture(scope="session")
def triv():
    return FiniteMonoid(1, ((0,),), 0, zero=0)


@pytest.fixture(scope="session")
def zmon():
    # {1, z} with z a two-sided zero
    return FiniteMonoid(2, ((0, 1), (1, 1)), 0, zero=1)


@pytest.fixture(scope="session")
def c2():
    # the two-element group
    return FiniteMonoid(2, ((0, 1), (1, 0)), 0)


@pytest.fixture(scope="session")
def reg_z(zmon):
    return regular_act(zmon)


@pytest.fixture(scope="session")
def pt_z(zmon):
    return point_act(zmon)


@pytest.fixture(scope="session")
def pair_z(zmon):
    # {a, b} with a*z = b*z = b; same table as the regular act
    return Act(zmon, "right", 2, ((0, 1), (1, 1)))


@pytest.fixture(scope="session")
def twofix_z(zmon):
    # two fixed points: coproduct of two one-element acts
    return Act(zmon, "right", 2, ((0, 0), (1, 1)))


@pytest.fixture(scope="session")
def incl_z(reg_z):
    # inclusion of the fixed point {z} into the regular act
    _, inc = subact(reg_z, [1])
    return inc


@pytest.fixture(scope="session")
def reg_c2(c2):
    return regular_act(c2)


@pytest.fixture(scope="session")
def pt_c2(c2):
    return point_act(c2)
