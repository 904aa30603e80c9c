"""Exact dense linear algebra over the rationals.

Rank is computed with fraction-free (Bareiss) elimination on an integer
rescaling of the matrix; a plain rational Gaussian elimination is kept as
an independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


class RatMatrix:
    """Dense row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        entries = [Fraction(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError("entries length must be rows*cols")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols)
                          for i in range(self.rows)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def _integer_rows(self) -> list[list[int]]:
        out = []
        for i in range(self.rows):
            r = self.row(i)
            den = 1
            for e in r:
                den = den * e.denominator // gcd(den, e.denominator)
            out.append([int(e * den) for e in r])
        return out

    def rank(self) -> int:
        """Exact rank via fraction-free Gaussian (Bareiss) elimination."""
        m = self._integer_rows()
        n_rows, n_cols = self.rows, self.cols
        rank = 0
        prev = 1
        row = 0
        for col in range(n_cols):
            pivot = None
            for r in range(row, n_rows):
                if m[r][col] != 0:
                    pivot = r
                    break
            if pivot is None:
                continue
            if pivot != row:
                m[row], m[pivot] = m[pivot], m[row]
            p = m[row][col]
            for r in range(row + 1, n_rows):
                f = m[r][col]
                for c in range(col, n_cols):
                    m[r][c] = (p * m[r][c] - f * m[row][c]) // prev
            prev = p
            row += 1
            rank += 1
            if row == n_rows:
                break
        return rank


def gaussian_rank(matrix: RatMatrix) -> int:
    """Independent rank oracle: ordinary elimination with exact fractions."""
    m = matrix.to_lists()
    n_rows, n_cols = matrix.rows, matrix.cols
    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row, n_rows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, n_rows):
            if m[r][col] == 0:
                continue
            f = m[r][col] / pv
            for c in range(col, n_cols):
                m[r][c] -= f * m[row][c]
        row += 1
        rank += 1
        if row == n_rows:
            break
    return rank
