"""Tests for fraction-free integer rank computation."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from psl2q.intrank import bareiss_rank


def rational_rank(matrix):
    """Independent oracle: textbook row reduction over Fraction."""
    rows = [[Fraction(v) for v in r] for r in matrix]
    if not rows:
        return 0
    rank = 0
    for col in range(len(rows[0])):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_simple_cases():
    assert bareiss_rank([]) == 0
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    assert bareiss_rank([[1, 0], [0, 1]]) == 2
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([[2, 0, 0], [0, 3, 0]]) == 2
    assert bareiss_rank([[1], [2], [3]]) == 1


def test_rank_deficient_with_cancellation():
    a = [[3, 1, 4], [1, 5, 9], [4, 6, 13]]  # row3 = row1 + row2
    assert bareiss_rank(a) == 2


def test_against_oracle_random():
    rng = random.Random(7)
    for _ in range(400):
        m = rng.randrange(1, 8)
        n = rng.randrange(1, 8)
        mat = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(m)]
        if m >= 3 and rng.random() < 0.5:
            mat[-1] = [a + b for a, b in zip(mat[0], mat[1])]
        assert bareiss_rank(mat) == rational_rank(mat)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=4, max_size=4),
        min_size=1,
        max_size=6,
    )
)
def test_against_oracle_hypothesis(mat):
    assert bareiss_rank(mat) == rational_rank(mat)


def test_numpy_rows_accepted():
    import numpy as np

    a = np.array([[1, 2, 3], [4, 5, 6], [7, 8, 9]], dtype=np.int64)
    assert bareiss_rank(a.tolist()) == 2
