"""Exact rational and integer linear algebra.

Scalars are :class:`fractions.Fraction`; matrices are plain row-major
sequences of sequences.  Nothing here ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction
Matrix = list[list[Fraction]]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; ints and Fractions pass through.

    Decimal strings and floats are rejected so that no binary rounding can
    leak into an instance.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise TypeError(f"not an exact rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if any(c in s for c in ".eE"):
        raise ValueError(f"rational must be written as p or p/q, got {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[parse_rational(x) for x in row] for row in rows]


def _rref(M: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    A = [list(map(Fraction, row)) for row in M]
    if not A:
        return A, []
    nrows, ncols = len(A), len(A[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        p = next((i for i in range(row, nrows) if A[i][col] != 0), None)
        if p is None:
            continue
        A[row], A[p] = A[p], A[row]
        inv = 1 / A[row][col]
        A[row] = [x * inv for x in A[row]]
        prow = A[row]
        for i in range(nrows):
            if i != row and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], prow)]
        pivots.append(col)
        row += 1
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M or not M[0]:
        return 0
    return len(_rref(M)[1])


def row_basis(M: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal set of linearly independent rows (greedy, in order)."""
    if not M:
        return []
    cols = len(M[0])
    transposed = [[M[i][j] for i in range(len(M))] for j in range(cols)]
    if cols == 0:
        return []
    return _rref(transposed)[1]


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Return one exact solution of ``A x = b`` or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is unique exactly when the
    columns of ``A`` are independent.
    """
    if len(A) != len(b):
        raise ValueError(f"dimension mismatch: {len(A)} rows but len(b) = {len(b)}")
    if not A:
        return []
    ncols = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = _rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = R[i][ncols]
    return x


def solve_unique(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Solve ``A x = b`` when the columns of ``A`` are independent.

    Returns ``None`` both for inconsistent systems and for dependent columns.
    """
    if len(A) != len(b):
        raise ValueError(f"dimension mismatch: {len(A)} rows but len(b) = {len(b)}")
    if not A:
        return None
    ncols = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = _rref(aug)
    if pivots != list(range(ncols)):
        return None
    return [R[i][ncols] for i in range(ncols)]


def matvec(A: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((a * xi for a, xi in zip(row, x)), Fraction(0)) for row in A]


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Plain elimination over the integers: the pivot is always the entry of
    smallest magnitude in the active block, remainders are pushed back into
    the block until the pivot divides its row and column, and a non-dividing
    entry elsewhere is folded into the pivot row before moving on.
    """
    A = [[int(x) for x in row] for row in M]
    if any(isinstance(x, bool) for row in M for x in row):
        raise TypeError("boolean entries are not integers here")
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    factors: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = A[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]

        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                _move_smallest_to_pivot(A, t)
                continue
            bad = next(
                (i for i in range(t + 1, nrows) if any(A[i][j] % p for j in range(t + 1, ncols))),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        factors.append(abs(A[t][t]))
        t += 1
    return factors


def _move_smallest_to_pivot(A: list[list[int]], t: int) -> None:
    """Swap the smallest nonzero entry of row t / column t into position (t, t)."""
    best = (abs(A[t][t]), t, t)
    for i in range(t + 1, len(A)):
        if A[i][t] and abs(A[i][t]) < best[0]:
            best = (abs(A[i][t]), i, t)
    for j in range(t + 1, len(A[0])):
        if A[t][j] and abs(A[t][j]) < best[0]:
            best = (abs(A[t][j]), t, j)
    _, i, j = best
    if i != t:
        A[t], A[i] = A[i], A[t]
    if j != t:
        for row in A:
            row[t], row[j] = row[j], row[t]
