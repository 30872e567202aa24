import pytest

from prepcode.construct import build_extended_preparata, build_nr_via_octacode
from prepcode.core import puncture


@pytest.fixture(scope="session")
def nr16():
    return build_extended_preparata(3)


@pytest.fixture(scope="session")
def p15(nr16):
    return puncture(nr16, 16)


@pytest.fixture(scope="session")
def octa16():
    return build_nr_via_octacode()
