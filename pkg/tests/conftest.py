import random

import pytest

from freeorder.groups import FreeProduct, Z, reduced_words


@pytest.fixture(scope="session")
def zz():
    return FreeProduct((Z, Z))


@pytest.fixture(scope="session")
def small_words(zz):
    return reduced_words(zz, 3, 2)


@pytest.fixture
def rng():
    return random.Random(1234)
