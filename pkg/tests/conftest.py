from itertools import permutations

import numpy as np
import pytest

from permres.algebra import FuncTable, eval_poly, make_cyclic_product, make_field, make_cayley, parse_poly


@pytest.fixture
def gf7():
    return make_field(7)


@pytest.fixture
def gf5():
    return make_field(5)


@pytest.fixture
def gf8():
    return make_field(2, 3)


@pytest.fixture
def gf9():
    return make_field(3, 2)


@pytest.fixture
def z5():
    return make_cyclic_product([5])


@pytest.fixture
def two_pairs(gf7):
    """[0,0,2,2,4,4,6] over F_7: distribution (3,1,3), pres 2."""
    return FuncTable(gf7, [0, 0, 2, 2, 4, 4, 6])


@pytest.fixture
def one_triple(gf7):
    """[0,0,0,3,4,5,6] over F_7: distribution (2,4,0,1), pres 3."""
    return FuncTable(gf7, [0, 0, 0, 3, 4, 5, 6])


@pytest.fixture
def square7(gf7):
    return eval_poly(gf7, parse_poly("x^2", gf7))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def symmetric_group_table(n: int = 3) -> list[list[int]]:
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (a + b)(i) = a(b(i))
    return [[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]


@pytest.fixture
def s3_table():
    return symmetric_group_table(3)


@pytest.fixture
def s3(s3_table):
    return make_cayley(s3_table, name="S3")
