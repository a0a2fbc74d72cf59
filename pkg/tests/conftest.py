import pytest

from smoothlab.dickman import build_rho_table
from smoothlab.zeros import load_default_zeros


@pytest.fixture(scope="session")
def rho_table():
    return build_rho_table()


@pytest.fixture(scope="session")
def zero_table():
    return load_default_zeros()
