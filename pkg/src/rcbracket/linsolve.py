"""Fraction-free Gaussian elimination over Q.

Only used at specialized parameters, as an oracle independent of the
recurrence solver.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    out = []
    for row in rows:
        d = 1
        for x in row:
            d = lcm(d, Fraction(x).denominator)
        out.append([int(Fraction(x) * d) for x in row])
    return out


def bareiss_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank via Bareiss elimination; all intermediate entries stay integral."""
    m = _integer_rows(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col + 1, ncols):
                # exact by Sylvester's identity
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
    return rank


def nullity(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> int:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return ncols - bareiss_rank(rows)


def is_consistent(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> bool:
    """Whether ``rows . x = rhs`` has a solution."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    return bareiss_rank(rows) == bareiss_rank(aug)


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """The unique solution of ``rows . x = rhs``, or None if there is none or
    it is not unique.  Plain Gauss-Jordan over Fractions.
    """
    ncols = len(rows[0]) if rows else 0
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    where = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        where.append(c)
        r += 1
    if any(row[-1] for row in m[r:]):
        return None
    if r < ncols:
        return None
    x = [Fraction(0)] * ncols
    for k, c in enumerate(where):
        x[c] = m[k][-1]
    return x
