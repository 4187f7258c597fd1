import pytest
from hypothesis import settings

from IdemFactor.oracle import singular_monoid

settings.register_profile('exact', derandomize=True, deadline=None, print_blob=True)
settings.load_profile('exact')


@pytest.fixture(scope='session')
def m2f2():
    return singular_monoid(2, 2)


@pytest.fixture(scope='session')
def m2f3():
    return singular_monoid(3, 2)


@pytest.fixture(scope='session')
def m3f2():
    return singular_monoid(2, 3)
