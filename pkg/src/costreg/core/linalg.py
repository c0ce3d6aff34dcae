"""Exact rational row-echelon bases."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class RowBasis:
    """Reduced row-echelon basis of a subspace of Q^n.

    Pivoting takes the first nonzero column, so results are deterministic.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def insert(self, vec: Sequence) -> bool:
        """Add ``vec``; returns False when it was already in the span."""
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            if row[piv] != 0:
                f = row[piv]
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True


def rref(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    if not rows:
        return []
    b = RowBasis(len(rows[0]))
    for r in rows:
        b.insert(r)
    return b.rows
