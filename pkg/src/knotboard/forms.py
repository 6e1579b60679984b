"""Exact symmetric integer forms: inertia and determinant.

Signatures are computed by congruence reduction over the rationals
(symmetric pivoting with a hyperbolic-block step when the diagonal
vanishes); no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SymmetricIntegerForm:
    """An n x n symmetric matrix with integer entries."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("form must be square")
        for i in range(n):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("form must be exactly symmetric")

    @property
    def rank_bound(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def signature_triple(self) -> tuple[int, int, int]:
        return inertia(self.entries)

    def signature(self) -> int:
        pos, neg, _ = self.signature_triple()
        return pos - neg

    def determinant(self) -> int:
        return determinant(self.entries)

    def is_positive_definite(self) -> bool:
        pos, neg, zero = self.signature_triple()
        return neg == 0 and zero == 0

    def is_negative_definite(self) -> bool:
        pos, neg, zero = self.signature_triple()
        return pos == 0 and zero == 0

    def to_rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    @staticmethod
    def from_rows(rows) -> "SymmetricIntegerForm":
        return SymmetricIntegerForm(tuple(tuple(int(x) for x in row) for row in rows))


def inertia(rows) -> tuple[int, int, int]:
    """Exact inertia (n+, n-, n0) of a symmetric rational matrix.

    Repeatedly splits off a nonzero diagonal pivot, or a hyperbolic
    2 x 2 block [[0, b], [b, 0]] (contributing one +1 and one -1) when
    every remaining diagonal entry is zero.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    active = list(range(n))
    pos = neg = zero = 0
    while active:
        pivot = next((k for k in active if m[k][k] != 0), None)
        if pivot is not None:
            p = m[pivot][pivot]
            if p > 0:
                pos += 1
            else:
                neg += 1
            active.remove(pivot)
            for i in active:
                if m[i][pivot] == 0:
                    continue
                f = m[i][pivot] / p
                for j in active:
                    m[i][j] -= f * m[pivot][j]
            for i in active:
                m[i][pivot] = m[pivot][i] = Fraction(0)
            continue
        off = next(
            ((i, j) for i in active for j in active if i < j and m[i][j] != 0), None
        )
        if off is None:
            zero += len(active)
            break
        i, j = off
        b = m[i][j]
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        for u in active:
            ui, uj = m[u][i], m[u][j]
            if ui == 0 and uj == 0:
                continue
            for v in active:
                m[u][v] -= (ui * m[j][v] + uj * m[i][v]) / b
        for u in active:
            m[u][i] = m[i][u] = m[u][j] = m[j][u] = Fraction(0)
    return pos, neg, zero


def determinant(rows) -> int:
    """Exact determinant of an integer matrix (1 for the empty matrix)."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    if det.denominator != 1:
        raise ArithmeticError("integer matrix produced a non-integer determinant")
    return int(det)
