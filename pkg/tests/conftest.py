import random

import pytest

from nnspectra.matrix import NonnegativeMatrix

# Incomparability pair: F > rank for A_RM, F < rank for B_RM.
A_RM = NonnegativeMatrix([[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]])
B_RM = NonnegativeMatrix([[1, 0, 1, 1], [0, 1, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1]])
# Induced-matching example; one_based() converts 1-based cell lists.
A_EX = NonnegativeMatrix([[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 1]])


def one_based(pairs):
    return [(a - 1, b - 1) for a, b in pairs]


@pytest.fixture
def rng():
    return random.Random(20240601)
