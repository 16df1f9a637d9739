"""Fraction-free (Bareiss) row reduction of integer matrices."""

from __future__ import annotations


def bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[int, list[int]]:
    """Rank and pivot columns of an integer matrix, scanning columns left to right.

    Every intermediate entry is a minor of the input, so all divisions are exact.
    ``rows`` is consumed.
    """
    m = [list(r) for r in rows if any(r)]
    rank = 0
    prev = 1
    pivots: list[int] = []
    nrows = len(m)
    for col in range(ncols):
        if rank == nrows:
            break
        sel = next((i for i in range(rank, nrows) if m[i][col]), None)
        if sel is None:
            continue
        m[rank], m[sel] = m[sel], m[rank]
        prow = m[rank]
        piv = prow[col]
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[col]
            if a:
                for j in range(col + 1, ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            else:
                for j in range(col + 1, ncols):
                    row[j] = (piv * row[j]) // prev
            row[col] = 0
        prev = piv
        pivots.append(col)
        rank += 1
    return rank, pivots


def rank(rows: list[list[int]], ncols: int) -> int:
    return bareiss_echelon(rows, ncols)[0]
