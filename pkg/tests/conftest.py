import pytest

from germcalc import Field, GermRing


@pytest.fixture
def R2():
    return GermRing(("x", "y"))


@pytest.fixture
def R3():
    return GermRing(("x", "y", "z"))


@pytest.fixture
def R3p():
    return GermRing(("x", "y", "z"), Field(32003))
