import pytest
from mpmath import mp

from serretlab.numkernel import make_context


@pytest.fixture(autouse=True)
def ambient_precision():
    # test-side arithmetic (differences against frozen literals) must not
    # round library results; acceptance runs up to 120 requested digits
    with mp.workdps(300):
        yield


@pytest.fixture
def ctx50():
    return make_context(50)


@pytest.fixture
def ctx30():
    return make_context(30)
