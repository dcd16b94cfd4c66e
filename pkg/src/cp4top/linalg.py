"""Small dense matrices over the rationals and integers (lists of lists)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list


def identity(n: int, one=1) -> Matrix:
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(row) for row in zip(*A)] if A else []


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in Bt] for row in A]


def _echelon(A: Sequence[Sequence]) -> tuple[Matrix, int, Fraction]:
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    sign = Fraction(1)
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            M[r], M[pivot] = M[pivot], M[r]
            sign = -sign
        for i in range(r + 1, rows):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return M, r, sign


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return _echelon(A)[1]


def det(A: Sequence[Sequence]) -> Fraction:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    M, r, sign = _echelon(A)
    if r < n:
        return Fraction(0)
    out = sign
    for i in range(n):
        out *= M[i][i]
    return out


def is_symmetric(A: Sequence[Sequence]) -> bool:
    return all(A[i][j] == A[j][i] for i in range(len(A)) for j in range(len(A)))


def is_skew_symmetric(A: Sequence[Sequence]) -> bool:
    n = len(A)
    return all(len(row) == n for row in A) and all(
        A[i][j] == -A[j][i] for i in range(n) for j in range(n)
    )
