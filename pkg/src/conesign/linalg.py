"""Exact linear algebra over Q used by tangent-space and rank computations."""

from __future__ import annotations

from fractions import Fraction


def rational_rank(rows) -> int:
    """Rank of a matrix given as a list of rows of Fractions/ints."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, len(m)):
            if m[r][col]:
                factor = m[r][col] / pv
                mr, mp = m[r], m[row]
                for c in range(col, ncols):
                    mr[c] -= factor * mp[c]
        rank += 1
        row += 1
        if row == len(m):
            break
    return rank


def nullity(rows, ncols: int) -> int:
    """Dimension of the solution space of rows * x = 0 in Q^ncols."""
    if not rows:
        return ncols
    return ncols - rational_rank(rows)


def solve_combination(vectors, target):
    """Coefficients writing target as a combination of vectors, or None.

    All entries are Fractions; vectors is a list of equal-length rows.
    """
    if not vectors:
        return [] if all(x == 0 for x in target) else None
    ncols = len(target)
    # augmented transpose: unknowns are the combination coefficients
    rows = [[vectors[j][i] for j in range(len(vectors))] + [target[i]]
            for i in range(ncols)]
    k = len(vectors)
    pivots = []
    r = 0
    for c in range(k):
        pivot = None
        for rr in range(r, len(rows)):
            if rows[rr][c] != 0:
                pivot = rr
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and rows[rr][c] != 0:
                f = rows[rr][c]
                rows[rr] = [a - f * b for a, b in zip(rows[rr], rows[r])]
        pivots.append(c)
        r += 1
    for rr in range(r, len(rows)):
        if rows[rr][k] != 0:
            return None
    coeffs = [Fraction(0)] * k
    for row_idx, c in enumerate(pivots):
        coeffs[c] = rows[row_idx][k]
    return coeffs
