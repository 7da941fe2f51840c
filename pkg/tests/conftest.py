import numpy as np
import pytest

from oracles import symmetric_table


@pytest.fixture(scope="session")
def s3_table():
    """S3 Cayley table built independently by permutation composition."""
    table, identity, perms = symmetric_table(3)
    return table, identity, perms


@pytest.fixture(scope="session")
def nonassociative_loop():
    """Order-5 Latin square with identity 0 that is not associative
    (found by exhaustive search; witness triple (1, 1, 2))."""
    table = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 3, 4, 0, 1],
             [3, 4, 1, 2, 0],
             [4, 2, 0, 1, 3]]
    return np.array(table)
