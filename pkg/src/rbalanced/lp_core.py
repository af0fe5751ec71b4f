"""Exact simplex over standard-form regions ``{x >= 0 : A x = b}``.

For a point configuration the region is the set of weight vectors: the
columns are the points with a 1 appended, and ``b`` is ``r`` with a 1
appended.  The same machinery also serves the characteristic-vector system
of classical balanced collections, which has no normalisation row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exact_linalg import matvec, rank, row_basis, solve, solve_unique

WeightVector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class SimplexStalled(RuntimeError):
    """Raised when the pivot watchdog trips; Bland's rule should never allow it."""


@dataclass(frozen=True)
class StandardSystem:
    """``A x = b, x >= 0`` with an explicit map from local to ambient columns.

    ``columns[j]`` is the ambient index of local column ``j`` and ``width`` is
    the ambient length used by :meth:`lift`.
    """

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    columns: tuple[int, ...] = ()
    width: int = 0
    _reduced: list = field(default_factory=list, compare=False, repr=False, hash=False)

    def __post_init__(self):
        ncols = len(self.A[0]) if self.A else 0
        if len(self.A) != len(self.b):
            raise ValueError("A and b disagree on the number of rows")
        if any(len(row) != ncols for row in self.A):
            raise ValueError("ragged matrix")
        if not self.columns:
            object.__setattr__(self, "columns", tuple(range(ncols)))
        if len(self.columns) != ncols:
            raise ValueError("columns must list one ambient index per column")
        if not self.width:
            object.__setattr__(self, "width", max(self.columns, default=-1) + 1)

    @classmethod
    def from_rows(cls, A: Sequence[Sequence], b: Sequence) -> "StandardSystem":
        return cls(
            tuple(tuple(Fraction(x) for x in row) for row in A),
            tuple(Fraction(x) for x in b),
        )

    @classmethod
    def for_points(cls, points: Sequence[Sequence[Fraction]], r: Sequence[Fraction],
                   mask: Optional[int] = None) -> "StandardSystem":
        """Weight-vector system of the points selected by ``mask`` (all if None)."""
        m = len(points)
        cols = tuple(i for i in range(m) if mask is None or mask >> i & 1)
        d = len(r)
        A = tuple(tuple(points[i][row] for i in cols) for row in range(d))
        A += (tuple(ONE for _ in cols),)
        return cls(A, tuple(r) + (ONE,), cols, m)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def restrict(self, mask: int) -> "StandardSystem":
        """Keep only the local columns whose ambient index is in ``mask``."""
        keep = [j for j, c in enumerate(self.columns) if mask >> c & 1]
        A = tuple(tuple(row[j] for j in keep) for row in self.A)
        return StandardSystem(A, self.b, tuple(self.columns[j] for j in keep), self.width)

    def lift(self, x: Sequence[Fraction]) -> WeightVector:
        out = [ZERO] * self.width
        for j, c in enumerate(self.columns):
            out[c] = x[j]
        return tuple(out)

    def satisfies(self, x: Sequence[Fraction]) -> bool:
        """Exact membership test for a local-coordinate vector."""
        return all(v >= 0 for v in x) and matvec(self.A, x) == list(self.b)

    def reduced(self) -> Optional[tuple[list[list[Fraction]], list[Fraction]]]:
        """Independent rows of the system, or None when ``A x = b`` has no solution."""
        if not self._reduced:
            if self.ncols == 0:
                ok = all(v == 0 for v in self.b)
                self._reduced.append(([], []) if ok else None)
            elif solve(self.A, self.b) is None:
                self._reduced.append(None)
            else:
                keep = row_basis(self.A)
                self._reduced.append(([list(self.A[i]) for i in keep], [self.b[i] for i in keep]))
        return self._reduced[0]


def support(x: Sequence[Fraction], columns: Optional[Sequence[int]] = None) -> int:
    """Bitmask of the nonzero coordinates (ambient indices when ``columns`` given)."""
    mask = 0
    for j, v in enumerate(x):
        if v:
            mask |= 1 << (columns[j] if columns is not None else j)
    return mask


class _Tableau:
    """Dense simplex tableau ``T x = rhs`` with basis bookkeeping."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        rows, rhs = self.rows, self.rhs
        inv = 1 / rows[r][c]
        prow = [v * inv for v in rows[r]]
        prhs = rhs[r] * inv
        rows[r], rhs[r] = prow, prhs
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * p for a, p in zip(rows[i], prow)]
                    rhs[i] -= f * prhs
        self.basis[r] = c

    def minimize(self, cost: list[Fraction], allowed: int, limit: int) -> Fraction:
        """Bland's-rule primal simplex on columns ``< allowed``; returns the optimum.

        The caller guarantees boundedness (every region here sits inside a
        simplex or is a phase-one problem).
        """
        for _ in range(limit):
            cb = [cost[j] for j in self.basis]
            entering = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                reduced = cost[j] - sum((cb[i] * self.rows[i][j] for i in range(len(self.rows))), ZERO)
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return sum((cb[i] * self.rhs[i] for i in range(len(self.rows))), ZERO)
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ValueError("objective is unbounded on this region")
            self.pivot(best[1], entering)
        raise SimplexStalled(f"no optimum after {limit} pivots")


def _watchdog(nrows: int, ncols: int) -> int:
    return 50 * (nrows + ncols + 1) ** 2 + 1000


def _phase_one(sys: StandardSystem) -> Optional[_Tableau]:
    """Feasible basis over the real columns only, or None if the region is empty."""
    red = sys.reduced()
    if red is None:
        return None
    A, b = red
    n, k = sys.ncols, len(A)
    if k == 0:
        return _Tableau([], [], [])
    rows, rhs = [], []
    for i in range(k):
        sign = -1 if b[i] < 0 else 1
        art = [ZERO] * k
        art[i] = ONE
        rows.append([sign * v for v in A[i]] + art)
        rhs.append(sign * b[i])
    tab = _Tableau(rows, rhs, [n + i for i in range(k)])
    cost = [ZERO] * n + [ONE] * k
    if tab.minimize(cost, n + k, _watchdog(k, n + k)) != 0:
        return None
    # Artificials left in the basis sit at level zero; rows are independent,
    # so some real column always has a nonzero entry to pivot on.
    for i in range(k):
        if tab.basis[i] >= n:
            j = next(j for j in range(n) if tab.rows[i][j] != 0 and j not in tab.basis)
            tab.pivot(i, j)
    tab.rows = [row[:n] for row in tab.rows]
    return tab


def _point(tab: _Tableau, n: int) -> list[Fraction]:
    x = [ZERO] * n
    for i, j in enumerate(tab.basis):
        x[j] = tab.rhs[i]
    return x


def feasible_point(sys: StandardSystem) -> Optional[WeightVector]:
    """Some feasible point in ambient coordinates, or None if the region is empty."""
    tab = _phase_one(sys)
    if tab is None:
        return None
    return sys.lift(_point(tab, sys.ncols))


def _optimize(sys: StandardSystem, j: int, sign: int) -> Optional[tuple[Fraction, WeightVector]]:
    tab = _phase_one(sys)
    if tab is None:
        return None
    n = sys.ncols
    cost = [ZERO] * n
    cost[j] = Fraction(-sign)
    value = tab.minimize(cost, n, _watchdog(len(tab.rows), n))
    return -sign * value, sys.lift(_point(tab, n))


def _local(sys: StandardSystem, i: int) -> int:
    try:
        return sys.columns.index(i)
    except ValueError:
        raise IndexError(f"column {i} is not part of this system") from None


def max_coordinate(sys: StandardSystem, i: int) -> Optional[tuple[Fraction, WeightVector]]:
    """Maximum of coordinate ``i`` (ambient index) and a maximiser; None if infeasible."""
    return _optimize(sys, _local(sys, i), +1)


def min_coordinate(sys: StandardSystem, i: int) -> Optional[tuple[Fraction, WeightVector]]:
    return _optimize(sys, _local(sys, i), -1)


def relint_point(sys: StandardSystem) -> Optional[WeightVector]:
    """A feasible point of maximal support, or None if the region is empty.

    Coordinates already positive in an earlier maximiser are not maximised
    again; the answer is the plain average of the maximisers collected, which
    is feasible and positive on every coordinate that can be positive.
    """
    start = feasible_point(sys)
    if start is None:
        return None
    found = [start]
    covered = support(start)
    for c in sys.columns:
        if covered >> c & 1:
            continue
        value, x = max_coordinate(sys, c)
        if value > 0:
            found.append(x)
            covered |= support(x)
    k = len(found)
    return tuple(sum(col, ZERO) / k for col in zip(*found))


def enumerate_vertices(sys: StandardSystem) -> list[WeightVector]:
    """All vertices of the region by exhaustive basis scan.

    Every column subset of size ``rank(A)`` with independent columns is
    solved; nonnegative solutions are vertices.  Degenerate vertices are
    reached through several bases and deduplicated.  Output is sorted by
    support mask, then by coordinates.
    """
    red = sys.reduced()
    if red is None:
        return []
    A, b = red
    rho = len(A)
    n = sys.ncols
    if rho == 0:
        return [sys.lift([ZERO] * n)]
    seen: set[WeightVector] = set()
    for B in combinations(range(n), rho):
        sub = [[A[i][j] for j in B] for i in range(rho)]
        xB = solve_unique(sub, b)
        if xB is None or any(v < 0 for v in xB):
            continue
        x = [ZERO] * n
        for j, v in zip(B, xB):
            x[j] = v
        seen.add(sys.lift(x))
    return sorted(seen, key=lambda v: (support(v), v))


def region_dim(sys: StandardSystem) -> int:
    """Dimension of the affine hull of the enumerated vertices (-1 if empty)."""
    verts = enumerate_vertices(sys)
    if not verts:
        return -1
    base = verts[0]
    diffs = [[a - b for a, b in zip(v, base)] for v in verts[1:]]
    return rank(diffs) if diffs else 0
