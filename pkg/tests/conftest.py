import pytest

from schubertq.spaces import space


@pytest.fixture(scope="session")
def e6():
    return space("E6/P1")


@pytest.fixture(scope="session")
def e7():
    return space("E7/P7")


def unit(sp, name):
    from schubertq.schubert_algebra import GradedElement

    return GradedElement.unit(sp, sp.naming.parse(name))
