"""Exact rank of integer matrices by fraction-free elimination.

One-step Bareiss elimination: at every step the update
(p * a[i][j] - a[i][c] * p_row[j]) is exactly divisible by the previous
pivot, so all intermediate entries stay integers (they are minors of the
input matrix).  Rows are swapped to pick the nonzero pivot of smallest
magnitude, which keeps the minors small; row swaps do not affect exactness.
The result is the rank over the rationals, hence over any field of
characteristic zero.
"""

from __future__ import annotations


def bareiss_rank(matrix) -> int:
    rows = [list(map(int, r)) for r in matrix]
    if not rows:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot_row = -1
        pivot_abs = None
        for i in range(rank, n_rows):
            v = rows[i][col]
            if v and (pivot_abs is None or abs(v) < pivot_abs):
                pivot_row, pivot_abs = i, abs(v)
        if pivot_row < 0:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for i in range(rank + 1, n_rows):
            row = rows[i]
            f = row[col]
            if f:
                for j in range(col + 1, n_cols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
                row[col] = 0
            elif prev != 1 or p != 1:
                for j in range(col + 1, n_cols):
                    row[j] = (p * row[j]) // prev
        prev = p
        rank += 1
    return rank
