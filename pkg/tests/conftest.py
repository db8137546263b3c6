import pytest

from h10ff.algebra.poly import UniPoly
from h10ff.algebra.ratfunc import RatFunc
from h10ff.denef import DenefContext
from h10ff.kimroush import KRContext


@pytest.fixture(scope="session")
def ctx():
    return DenefContext()


@pytest.fixture(scope="session")
def kr():
    return KRContext()


@pytest.fixture
def t():
    return RatFunc.gen("t")


@pytest.fixture
def tp():
    return UniPoly.gen("t")
