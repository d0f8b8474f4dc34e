import pytest

from robinshell.radial_sl import ShellGeometry

WIDE = ShellGeometry(2, 1.0, 15.0)
UNIT = ShellGeometry(2, 0.5, 1.0)
UNIT3 = ShellGeometry(3, 0.5, 1.0)


@pytest.fixture
def wide():
    return WIDE


@pytest.fixture
def unit():
    return UNIT


@pytest.fixture
def unit3():
    return UNIT3
