"""Exact rational linear algebra.

Vectors are numpy object arrays of ``gmpy2.mpq``; every operation is exact.
The :class:`Echelon` class keeps an incrementally grown semi-echelon basis:
rows are stored in insertion order, each normalised to 1 at its pivot and
reduced against all earlier rows, so reducing by any prefix of the rows is a
valid membership test for the span of that prefix.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def q(x) -> mpq:
    """Coerce an int, Fraction or mpq to ``mpq``."""
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def to_fraction(x) -> Fraction:
    x = q(x)
    return Fraction(int(x.numerator), int(x.denominator))


def zeros(n: int) -> np.ndarray:
    v = np.empty(n, dtype=object)
    v.fill(ZERO)
    return v


def vector(entries) -> np.ndarray:
    v = np.empty(len(entries), dtype=object)
    for i, x in enumerate(entries):
        v[i] = q(x)
    return v


def is_zero(v: np.ndarray) -> bool:
    return not any(v)


def first_nonzero(v: np.ndarray) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


class Echelon:
    """Incremental semi-echelon basis of a subspace of Q^dim.

    Each row may carry an integer ``level`` (non-decreasing in insertion
    order); ``reduce(v, below=d)`` reduces only by rows with level < d.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.pivots: list[int] = []
        self.rows: list[np.ndarray] = []
        self.levels: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def _prefix(self, below: int | None) -> int:
        if below is None:
            return len(self.rows)
        return bisect_left(self.levels, below)

    def reduce(self, v: np.ndarray, below: int | None = None) -> np.ndarray:
        """Return ``v`` reduced modulo the span of the selected rows."""
        v = v.copy()
        for i in range(self._prefix(below)):
            c = v[self.pivots[i]]
            if c:
                v = v - c * self.rows[i]
        return v

    def coordinates(self, v: np.ndarray) -> list[mpq] | None:
        """Coefficients of ``v`` in the stored rows, or None if not in the span."""
        v = v.copy()
        coeffs = []
        for piv, row in zip(self.pivots, self.rows):
            c = v[piv]
            coeffs.append(c)
            if c:
                v = v - c * row
        if not is_zero(v):
            return None
        return coeffs

    def contains(self, v: np.ndarray, below: int | None = None) -> bool:
        return is_zero(self.reduce(v, below))

    def insert(self, v: np.ndarray, level: int = 0) -> bool:
        """Add ``v`` to the basis if independent; return whether it was added."""
        if self.levels and level < self.levels[-1]:
            raise ValueError("levels must be inserted in non-decreasing order")
        w = self.reduce(v)
        piv = first_nonzero(w)
        if piv < 0:
            return False
        w = w * (ONE / w[piv])
        self.pivots.append(piv)
        self.rows.append(w)
        self.levels.append(level)
        return True


def rank(rows) -> int:
    """Exact rank of a list of equal-length rows."""
    rows = [vector(r) for r in rows]
    if not rows:
        return 0
    ech = Echelon(len(rows[0]))
    for r in rows:
        ech.insert(r)
    return len(ech)


def solve(columns, target) -> list[Fraction] | None:
    """Solve ``sum_i c_i * columns[i] = target`` exactly; None if inconsistent.

    The columns must be linearly independent.
    """
    n = len(columns)
    m = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(m)]
    row = 0
    where = [-1] * n
    for col in range(n):
        sel = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        piv = aug[row][col]
        aug[row] = [x / piv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        where[col] = row
        row += 1
    for r in range(row, m):
        if aug[r][n] != 0:
            return None
    if any(w < 0 for w in where):
        raise ValueError("columns are linearly dependent")
    return [aug[where[j]][n] for j in range(n)]
