import pytest

from rankshift import families
from rankshift.shapes import Shape
from rankshift.words import make_word


@pytest.fixture(scope="session")
def g1():
    return families.golden_mean()


@pytest.fixture(scope="session")
def g2():
    return families.full_shift()


@pytest.fixture(scope="session")
def g3():
    return families.tensor_golden()


@pytest.fixture(scope="session")
def g4():
    return families.identity_family()


@pytest.fixture(scope="session")
def line_word():
    """Rank-1 word builder: line_word(family, 0, 1, 0)."""
    def build(family, *labels):
        return make_word(family, Shape.of(len(labels) - 1), labels)
    return build
