"""Exact Gaussian elimination over Fraction or ExactScalar entries.

The routines are generic over any field-like scalar supporting +, -, *, /
and truthiness, which covers Fraction and ExactScalar. Integer entries are
promoted to Fraction. Row operations act componentwise per column, so a
matrix may hold different radicands in different rows or columns as long
as no single elimination step has to combine two distinct irrationals in
one entry (ExactScalar raises MixedRadicandError if that happens).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactnum import ExactScalar

__all__ = ["promote", "rref", "rank", "det", "int_rank"]


def promote(value):
    """Lift ints to Fraction; pass Fraction and ExactScalar through."""
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, ExactScalar)):
        return value
    raise TypeError(f"unsupported matrix entry {value!r}")


def rref(rows: Sequence[Sequence]) -> tuple[list[list], tuple[int, ...]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = [[promote(v) for v in row] for row in rows]
    if not mat:
        return [], ()
    ncols = len(mat[0])
    if any(len(row) != ncols for row in mat):
        raise ValueError("ragged matrix")
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        pivot = next((i for i in range(prow, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[prow], mat[pivot] = mat[pivot], mat[prow]
        inv = mat[prow][col]
        mat[prow] = [v / inv for v in mat[prow]]
        for i in range(len(mat)):
            if i != prow and mat[i][col]:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[prow])]
        pivots.append(col)
        prow += 1
        if prow == len(mat):
            break
    return mat, tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def det(rows: Sequence[Sequence]):
    """Exact determinant of a square matrix."""
    mat = [[promote(v) for v in row] for row in rows]
    k = len(mat)
    if any(len(row) != k for row in mat):
        raise ValueError("determinant needs a square matrix")
    if k == 0:
        return Fraction(1)
    sign = 1
    for col in range(k):
        pivot = next((i for i in range(col, k) if mat[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            sign = -sign
        for i in range(col + 1, k):
            if mat[i][col]:
                c = mat[i][col] / mat[col][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[col])]
    out = mat[0][0]
    for i in range(1, k):
        out = out * mat[i][i]
    return out if sign == 1 else -out


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix (promoted to Fraction internally)."""
    return rank([[Fraction(v) for v in row] for row in rows])
