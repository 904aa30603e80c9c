import random
from fractions import Fraction

import pytest

from birigid.linalg import RatMatrix, gaussian_rank


def random_matrix(rng: random.Random, rows: int, cols: int,
                  low_rank: bool = False) -> RatMatrix:
    if low_rank and rows > 1 and cols > 1:
        r = rng.randint(1, min(rows, cols))
        a = [[Fraction(rng.randint(-5, 5)) for _ in range(r)] for _ in range(rows)]
        b = [[Fraction(rng.randint(-5, 5)) for _ in range(cols)] for _ in range(r)]
        entries = [sum(a[i][k] * b[k][j] for k in range(r))
                   for i in range(rows) for j in range(cols)]
        return RatMatrix(rows, cols, entries)
    return RatMatrix(rows, cols,
                     [Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                      for _ in range(rows * cols)])


def test_identity_rank():
    assert RatMatrix.identity(3).rank() == 3


def test_dependent_rows():
    assert RatMatrix.from_rows([[1, 2], [2, 4]]).rank() == 1


def test_zero_matrix():
    assert RatMatrix(2, 3, [0] * 6).rank() == 0
    assert RatMatrix(0, 5, []).rank() == 0


def test_bad_dimensions():
    with pytest.raises(ValueError):
        RatMatrix(2, 2, [1, 2, 3])


def test_rank_equals_transpose_rank():
    rng = random.Random(17)
    for _ in range(40):
        rows = rng.randint(1, 12)
        cols = rng.randint(1, 12)
        m = random_matrix(rng, rows, cols, low_rank=rng.random() < 0.5)
        assert m.rank() == m.transpose().rank()


def test_bareiss_matches_gaussian_oracle():
    rng = random.Random(29)
    for _ in range(60):
        rows = rng.randint(1, 10)
        cols = rng.randint(1, 10)
        m = random_matrix(rng, rows, cols, low_rank=rng.random() < 0.5)
        assert m.rank() == gaussian_rank(m)


def test_fractional_entries():
    m = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)],
                             [Fraction(3, 2), Fraction(2)]])
    assert m.rank() == 2
    assert gaussian_rank(m) == 2
    dependent = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)],
                                     [Fraction(3, 2), Fraction(1)]])
    assert dependent.rank() == 1
