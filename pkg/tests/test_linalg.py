import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from mcgkit import linalg


def _sympy_factors(rows):
    D = sympy_snf(Matrix(rows), domain=ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]


@pytest.mark.parametrize("seed", range(25))
def test_snf_matches_sympy(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    rows = [[rng.randint(-9, 9) * rng.choice([1, 1, 2, 3]) for _ in range(n)] for _ in range(m)]
    ours = linalg.smith_normal_form(rows)
    assert ours == _sympy_factors(rows)
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


def test_snf_small():
    assert linalg.smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert linalg.smith_normal_form([[0, 0], [0, 0]]) == []


def test_det_and_inverse():
    A = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert linalg.det(A) == int(Matrix(A).det())
    inv = linalg.inverse(A)
    assert linalg.matmul(A, inv) == linalg.identity(3)
    assert linalg.inverse(A, 7) == [[int(x) % 7 for x in row] for row in
                                    (Matrix(A).inv_mod(7)).tolist()]


def test_solve_and_nullspace():
    A = [[1, 2, 3], [2, 4, 6]]
    assert linalg.solve(A, [1, 3]) is None
    x = linalg.solve(A, [1, 2])
    assert linalg.matvec(A, x) == [1, 2]
    for v in linalg.nullspace(A):
        assert linalg.matvec(A, v) == [0, 0]
    assert len(linalg.nullspace(A, 5)) == 2
    assert linalg.rank([[1, 1], [1, -1]], 2) == 1
