import numpy as np
import pytest

from conics.configuration import Configuration


def diagonal_gram(n: int, k: int = 2) -> list[list[int]]:
    return (k * np.eye(n, dtype=np.int64)).tolist()


def unit(n: int, *entries) -> tuple[int, ...]:
    """Vector with the given (position, value) entries."""
    v = [0] * n
    for i, a in entries:
        v[i] = a
    return tuple(v)


@pytest.fixture
def config_a():
    """2I_6 with hbar = (1,...,1): the conics are e_i + e_j, no reflections."""
    return Configuration.from_gram(diagonal_gram(6), (1,) * 6, name="A")


@pytest.fixture
def config_b():
    """2I_8 with hbar = (2,1,1,0,...): e_1 +- e_k for k >= 4 and e_2 + e_3."""
    return Configuration.from_gram(diagonal_gram(8), (2, 1, 1, 0, 0, 0, 0, 0), name="B")
