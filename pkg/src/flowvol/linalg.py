"""Exact null spaces of integer matrices via fraction-free elimination.

Bareiss one-step elimination keeps every intermediate entry an integer (each
division is exact), so there is no rounding and no coefficient blow-up beyond
what determinant minors force.  Back substitution then produces one rational
basis vector per free column.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def integer_nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} for the integer matrix A, one vector per free column.

    ``ncols`` is required because A may have no rows at all, in which case
    the null space is the whole coordinate space.
    """
    if ncols < 0:
        raise ValueError("ncols must be nonnegative")
    a = [list(map(int, row)) for row in rows]
    for row in a:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    nrows = len(a)

    pivots: list[tuple[int, int]] = []  # (row, column), in elimination order
    prev = 1
    pr = 0
    for pc in range(ncols):
        pivot_row = next((i for i in range(pr, nrows) if a[i][pc] != 0), None)
        if pivot_row is None:
            continue
        a[pr], a[pivot_row] = a[pivot_row], a[pr]
        pivot = a[pr][pc]
        for i in range(pr + 1, nrows):
            factor = a[i][pc]
            row_i = a[i]
            row_p = a[pr]
            for j in range(pc, ncols):
                row_i[j] = (pivot * row_i[j] - factor * row_p[j]) // prev
        pivots.append((pr, pc))
        prev = pivot
        pr += 1
        if pr == nrows:
            break

    pivot_cols = {pc for _, pc in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]

    basis: list[list[Fraction]] = []
    for free in free_cols:
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for row, col in reversed(pivots):
            acc = Fraction(0)
            for j in range(col + 1, ncols):
                if x[j]:
                    acc += a[row][j] * x[j]
            x[col] = -acc / a[row][col]
        basis.append(x)
    return basis
