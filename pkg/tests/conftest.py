import random

import pytest

from semifact.core import SemigroupPresentation
from semifact.reproduce import random_numerical_semigroup


@pytest.fixture
def mcnugget():
    return SemigroupPresentation.numerical([6, 9, 20])


@pytest.fixture
def plane():
    return SemigroupPresentation.affine([(2, 1), (1, 1), (1, 2)])


@pytest.fixture
def corpus():
    rng = random.Random(7)
    return [random_numerical_semigroup(rng) for _ in range(12)]
