"""Exact rational linear algebra on fractions.Fraction matrices.

Small and dense by design: these helpers back the certificate-grade checks
(exact rank, exact inverses, exact solves) where floating point is not
allowed. Matrices are plain lists of lists of Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = Sequence[Fraction]


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"refusing lossy float->rational coercion: {value!r}")
        return Fraction(int(value))
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_fraction(value: Fraction) -> str:
    """Serialize as 'p/q', always spelling out the denominator."""
    return f"{value.numerator}/{value.denominator}"


def exact_rank(rows: Sequence[Row]) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for i in range(rank + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] / prow[col]
                work[i] = [a - f * b for a, b in zip(work[i], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


def exact_inverse(rows: Sequence[Row]) -> list[list[Fraction]] | None:
    """Exact inverse of a square rational matrix; None when singular."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    if any(len(r) != 2 * n for r in aug):
        raise ValueError("exact_inverse needs a square matrix")
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [r[n:] for r in aug]


def exact_matvec(mat: Sequence[Row], vec: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in mat]


def exact_dot(u: Row, v: Row) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def independent_rows(rows: Sequence[Row], count: int) -> list[int]:
    """Indices of the first `count` linearly independent rows (greedy)."""
    reduced: list[tuple[list[Fraction], int]] = []
    picked: list[int] = []
    for idx, row in enumerate(rows):
        r = list(row)
        for prow, pcol in reduced:
            if r[pcol] != 0:
                f = r[pcol] / prow[pcol]
                r = [a - f * b for a, b in zip(r, prow)]
        pcol = next((j for j, v in enumerate(r) if v != 0), None)
        if pcol is not None:
            reduced.append((r, pcol))
            picked.append(idx)
            if len(picked) == count:
                break
    return picked
