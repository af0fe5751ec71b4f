"""Reduced integer homology of finite simplicial complexes.

Ranks and torsion come from invariant factors of the augmented boundary
maps.  Boundary matrices are reduced sparsely first: every pivot with value
±1 is a unimodular step that contributes one invariant factor 1, so only
the block left without unit entries is handed to the dense Smith form.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Optional

from .complexes import SimplicialComplex
from .exact_linalg import smith_normal_form


@dataclass(frozen=True)
class HomologyProfile:
    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)
    euler_reduced: int = 0

    def nonzero_betti(self) -> dict[int, int]:
        return {i: b for i, b in self.betti.items() if b}

    def to_dict(self, sphere_n: Optional[int] = None) -> dict[str, Any]:
        out: dict[str, Any] = {
            "betti": {str(i): b for i, b in sorted(self.betti.items())},
            "torsion": {str(i): list(t) for i, t in sorted(self.torsion.items())},
            "euler_reduced": self.euler_reduced,
        }
        if sphere_n is not None:
            out["sphere"] = {"is_sphere": is_sphere_profile(self, sphere_n), "n": sphere_n}
        else:
            n = sphere_degree(self)
            out["sphere"] = {"is_sphere": n is not None, "n": n}
        return out


def _simplices(K: SimplicialComplex, cap: Optional[int]) -> list[list[tuple[int, ...]]]:
    """Faces grouped by dimension (index ``i + 1`` holds the ``i``-faces)."""
    pos = {g: i for i, g in enumerate(K.ground)}
    if K.is_void:
        return []
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(K.dim + 2)]
    for f in K.faces(cap):
        by_dim[len(f)].append(tuple(sorted(pos[v] for v in f)))
    for group in by_dim:
        group.sort()
    return by_dim


def _sparse_boundaries(by_dim) -> list[list[dict[int, int]]]:
    """``out[i]`` = columns of the boundary map from ``i``-faces to ``(i-1)``-faces."""
    out = []
    for i in range(len(by_dim) - 1):
        lower = {s: k for k, s in enumerate(by_dim[i])}
        cols = []
        for s in by_dim[i + 1]:
            col = {}
            for j in range(len(s)):
                col[lower[s[:j] + s[j + 1:]]] = -1 if j % 2 else 1
            cols.append(col)
        out.append(cols)
    return out


def boundary_matrices(K: SimplicialComplex, cap: Optional[int] = None) -> list[list[list[int]]]:
    """Dense augmented boundary maps; entry ``i`` sends ``i``-faces to ``(i-1)``-faces.

    Vertices are ordered by the ground list and faces lexicographically.
    """
    by_dim = _simplices(K, cap)
    mats = []
    for i, cols in enumerate(_sparse_boundaries(by_dim)):
        rows = len(by_dim[i])
        M = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for r, v in col.items():
                M[r][j] = v
        mats.append(M)
    return mats


def sparse_invariant_factors(cols: list[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given by columns."""
    cols = [dict(c) for c in cols]
    rows: dict[int, set[int]] = defaultdict(set)
    for j, c in enumerate(cols):
        for r in c:
            rows[r].add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in range(len(cols)):
            c = cols[j]
            if not c:
                continue
            best = None
            for r, v in c.items():
                if v == 1 or v == -1:
                    n = len(rows[r])
                    if best is None or n < best[0]:
                        best = (n, r)
                        if n == 1:
                            break
            if best is None:
                continue
            r = best[1]
            pv = c[r]
            # Column operations clear row r everywhere else; then row r and
            # column j split off as a 1x1 unit block.
            for k in list(rows[r]):
                if k == j:
                    continue
                ck = cols[k]
                f = ck[r] * pv
                for rr, vv in c.items():
                    nv = ck.get(rr, 0) - f * vv
                    if nv:
                        if rr not in ck:
                            rows[rr].add(k)
                        ck[rr] = nv
                    elif rr in ck:
                        del ck[rr]
                        rows[rr].discard(k)
            for rr in c:
                rows[rr].discard(j)
            cols[j] = {}
            units += 1
            progress = True
    rest = [c for c in cols if c]
    if not rest:
        return [1] * units
    row_ids = sorted({r for c in rest for r in c})
    where = {r: i for i, r in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for j, c in enumerate(rest):
        for r, v in c.items():
            dense[where[r]][j] = v
    return [1] * units + smith_normal_form(dense)


def reduced_homology(K: SimplicialComplex, cap: Optional[int] = None) -> HomologyProfile:
    """Reduced homology in degrees ``-1 .. dim K``; the void complex has none."""
    by_dim = _simplices(K, cap)
    if not by_dim:
        return HomologyProfile({}, {}, 0)
    factors = [sparse_invariant_factors(cols) for cols in _sparse_boundaries(by_dim)]
    # factors[i] belongs to the map out of (i)-faces, i.e. degree i.
    ranks = [len(f) for f in factors] + [0]
    betti, torsion = {}, {}
    for deg in range(-1, K.dim + 1):
        f = len(by_dim[deg + 1])
        into = ranks[deg + 1] if deg + 1 < len(factors) else 0
        out_of = ranks[deg] if deg >= 0 else 0
        betti[deg] = f - out_of - into
        if deg + 1 < len(factors):
            tors = tuple(x for x in factors[deg + 1] if x > 1)
            if tors:
                torsion[deg] = tors
    chi = sum(_sign(deg) * len(by_dim[deg + 1]) for deg in range(-1, K.dim + 1))
    return HomologyProfile(betti, torsion, chi)


def euler_characteristic(K: SimplicialComplex, cap: Optional[int] = None) -> int:
    """Reduced Euler characteristic, counting the empty face once."""
    if K.is_void:
        return 0
    return sum(_sign(len(f) - 1) for f in K.faces(cap))


def _sign(deg: int) -> int:
    return -1 if deg % 2 else 1


def is_sphere_profile(p: HomologyProfile, n: int) -> bool:
    return not p.torsion and p.nonzero_betti() == {n: 1}


def sphere_degree(p: HomologyProfile) -> Optional[int]:
    nz = p.nonzero_betti()
    if p.torsion or len(nz) != 1:
        return None
    (deg, b), = nz.items()
    return deg if b == 1 else None
