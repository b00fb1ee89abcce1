import numpy as np
import pytest

from tpw.corpus import (
    algebra_c,
    algebra_c2,
    algebra_group_z2,
    algebra_m2,
    algebra_null1,
    algebra_row2,
    algebra_ut2,
    builtin_corpus,
)

TOL = 1e-9


@pytest.fixture(scope="session")
def tol():
    return TOL


@pytest.fixture(scope="session")
def alg_c():
    return algebra_c()


@pytest.fixture(scope="session")
def alg_c2():
    return algebra_c2()


@pytest.fixture(scope="session")
def alg_m2():
    return algebra_m2()


@pytest.fixture(scope="session")
def alg_z2():
    return algebra_group_z2()


@pytest.fixture(scope="session")
def alg_ut2():
    return algebra_ut2()


@pytest.fixture(scope="session")
def alg_row2():
    return algebra_row2()


@pytest.fixture(scope="session")
def alg_null1():
    return algebra_null1()


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture()
def rng():
    return np.random.default_rng(0)


def random_element(rng, dim):
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
