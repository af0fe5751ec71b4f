"""Classical balanced collections and the Bondareva-Shapley core test.

Coalitions are bitmasks over players ``1..n`` (bit ``i - 1`` is player ``i``).
A family of coalitions is also a bitmask, over the coalition masks
``1 .. 2^n - 1``; in the mass-center configuration returned by
:func:`shapley_configuration` coalition ``S`` is point ``S - 1``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from .exact_linalg import format_rational, parse_rational
from .geometry import InstanceError, PointConfiguration
from .lp_core import StandardSystem, enumerate_vertices, feasible_point, relint_point

DEFAULT_PLAYER_CAP = 5
Coalition = int


class PlayerCapExceeded(ValueError):
    pass


def _check_cap(n: int, cap: Optional[int]) -> None:
    if n < 1:
        raise ValueError("need at least one player")
    cap = DEFAULT_PLAYER_CAP if cap is None else cap
    if n > cap:
        raise PlayerCapExceeded(f"n = {n} exceeds the player cap {cap}")
    if cap > DEFAULT_PLAYER_CAP and n > DEFAULT_PLAYER_CAP:
        warnings.warn(f"n = {n} is above the default cap; enumeration may be very slow",
                      RuntimeWarning, stacklevel=3)


def members(S: Coalition) -> list[int]:
    """Players of a coalition, 1-based."""
    return [i + 1 for i in range(S.bit_length()) if S >> i & 1]


def coalition(players: Iterable[int]) -> Coalition:
    S = 0
    for p in players:
        if p < 1:
            raise ValueError(f"players are numbered from 1, got {p}")
        S |= 1 << (p - 1)
    return S


def coalition_key(S: Coalition, n: int) -> str:
    ps = members(S)
    return "".join(map(str, ps)) if n <= 9 else ",".join(map(str, ps))


def parse_coalition_key(key: str, n: int) -> Coalition:
    key = key.strip()
    parts = key.split(",") if ("," in key or n > 9) else list(key)
    try:
        S = coalition(int(p) for p in parts)
    except ValueError as exc:
        raise InstanceError(f"bad coalition key {key!r}") from exc
    if S == 0 or S >> n:
        raise InstanceError(f"coalition {key!r} is not a nonempty subset of 1..{n}")
    return S


@dataclass(frozen=True)
class Collection:
    sets: tuple[Coalition, ...]
    weights: Optional[tuple[Fraction, ...]] = None

    def describe(self, n: int) -> str:
        keys = ",".join("{" + coalition_key(S, n) + "}" for S in self.sets)
        if self.weights is None:
            return keys
        return keys + " weights " + ",".join(format_rational(w) for w in self.weights)


def shapley_configuration(n: int, cap: Optional[int] = None) -> PointConfiguration:
    """Mass centers of the nonempty faces of the standard simplex, ``r`` its barycenter."""
    _check_cap(n, cap)
    pts, labels = [], []
    for S in range(1, 1 << n):
        k = bin(S).count("1")
        pts.append(tuple(Fraction(1, k) if S >> i & 1 else Fraction(0) for i in range(n)))
        labels.append(coalition_key(S, n))
    r = tuple(Fraction(1, n) for _ in range(n))
    return PointConfiguration(tuple(pts), r, tuple(labels))


def family_mask(sets: Iterable[Coalition]) -> int:
    """Point mask of a family inside the mass-center configuration."""
    out = 0
    for S in sets:
        out |= 1 << (S - 1)
    return out


def characteristic_system(n: int, sets: Sequence[Coalition]) -> StandardSystem:
    """``sum_S lambda_S 1_S = 1`` with one column per coalition, no normalisation row."""
    A = [[Fraction(S >> i & 1) for S in sets] for i in range(n)]
    return StandardSystem.from_rows(A, [1] * n)


def _check_family(n: int, sets: Sequence[Coalition]) -> None:
    if not sets:
        raise ValueError("collection must be nonempty")
    if len(set(sets)) != len(sets):
        raise ValueError("collection has repeated coalitions")
    for S in sets:
        if S <= 0 or S >> n:
            raise ValueError(f"{S:b} is not a nonempty coalition of {n} players")


def is_balanced_collection(n: int, sets: Sequence[Coalition]) -> tuple[bool, Optional[tuple[Fraction, ...]]]:
    """Whether strictly positive weights put the characteristic vectors on the all-ones vector.

    Returns the verdict together with witness weights (``None`` when unbalanced).
    """
    sets = list(sets)
    _check_family(n, sets)
    x = relint_point(characteristic_system(n, sets))
    if x is None or any(v == 0 for v in x):
        return False, None
    return True, x


@lru_cache(maxsize=None)
def _minimal_collections(n: int) -> tuple[Collection, ...]:
    sets = list(range(1, 1 << n))
    verts = enumerate_vertices(characteristic_system(n, sets))
    out = []
    for v in verts:
        chosen = tuple(S for S, w in zip(sets, v) if w)
        out.append(Collection(chosen, tuple(w for w in v if w)))
    return tuple(sorted(out, key=lambda c: (len(c.sets), c.sets)))


def minimal_balanced_collections(n: int, cap: Optional[int] = None) -> list[Collection]:
    """Minimal balanced collections on ``n`` players with their unique weights.

    These are the supports of the vertices of ``{lambda >= 0 : sum lambda_S 1_S = 1}``.
    Sorted by size, then by coalition masks.
    """
    _check_cap(n, cap)
    return list(_minimal_collections(n))


def minimal_collections_by_scan(n: int, cap: Optional[int] = None) -> list[tuple[Coalition, ...]]:
    """Independent count: level-wise scan for inclusion-minimal weakly balanced families.

    A family can only be minimal if all its one-smaller subfamilies admit no
    nonnegative solution; supersets of solvable families are never visited.
    """
    _check_cap(n, cap)
    coalitions = list(range(1, 1 << n))
    blocked: set[tuple[int, ...]] = {()}
    found: list[tuple[int, ...]] = []
    level = [()]
    while level:
        candidates = set()
        for fam in level:
            start = coalitions.index(fam[-1]) + 1 if fam else 0
            for S in coalitions[start:]:
                cand = fam + (S,)
                if all(cand[:i] + cand[i + 1:] in blocked for i in range(len(cand))):
                    candidates.add(cand)
        level = []
        for cand in sorted(candidates):
            if feasible_point(characteristic_system(n, cand)) is None:
                blocked.add(cand)
                level.append(cand)
            else:
                found.append(cand)
    return sorted(found, key=lambda c: (len(c), c))


@dataclass(frozen=True)
class CoopGame:
    n: int
    values: dict[Coalition, Fraction]

    def __post_init__(self):
        missing = [S for S in range(1, 1 << self.n) if S not in self.values]
        if missing:
            raise InstanceError(f"characteristic function missing {len(missing)} coalitions, "
                                f"e.g. {coalition_key(missing[0], self.n)}")

    @property
    def grand(self) -> Fraction:
        return self.values[(1 << self.n) - 1]

    def v(self, S: Coalition) -> Fraction:
        return self.values[S]


def game_from_dict(data: dict[str, Any]) -> CoopGame:
    try:
        n = int(data["n"])
        raw = data["v"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError("game must be an object with 'n' and 'v'") from exc
    if n < 1:
        raise InstanceError("n must be positive")
    try:
        values = {parse_coalition_key(k, n): parse_rational(val) for k, val in raw.items()}
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceError(str(exc)) from exc
    return CoopGame(n, values)


def game_to_dict(g: CoopGame) -> dict[str, Any]:
    return {"n": g.n, "v": {coalition_key(S, g.n): format_rational(v)
                            for S, v in sorted(g.values.items())}}


def load_game(path: str | Path) -> CoopGame:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    return game_from_dict(data)


@dataclass(frozen=True)
class CoreVerdict:
    nonempty: bool
    violating: Optional[Collection] = None
    excess: Optional[Fraction] = None


def bondareva_shapley(g: CoopGame, cap: Optional[int] = None) -> CoreVerdict:
    """Core test through minimal balanced collections.

    Reports the first collection (in enumeration order) whose weighted
    coalition values exceed the grand-coalition value.
    """
    for c in minimal_balanced_collections(g.n, cap):
        total = sum((w * g.v(S) for S, w in zip(c.sets, c.weights)), Fraction(0))
        if total > g.grand:
            return CoreVerdict(False, c, total - g.grand)
    return CoreVerdict(True)


def core_nonempty(g: CoopGame, cap: Optional[int] = None) -> bool:
    return bondareva_shapley(g, cap).nonempty


def core_allocation(g: CoopGame, cap: Optional[int] = None) -> Optional[tuple[Fraction, ...]]:
    """Direct LP: some ``x`` with ``x(N) = v(N)`` and ``x(S) >= v(S)``, or None.

    Variables are split as ``x = p - q`` with ``p, q >= 0`` and one surplus
    variable per proper coalition.
    """
    _check_cap(g.n, cap)
    n = g.n
    proper = [S for S in range(1, (1 << n) - 1)]
    width = 2 * n + len(proper)
    A, b = [], []
    for k, S in enumerate(proper):
        row = [Fraction(0)] * width
        for i in range(n):
            if S >> i & 1:
                row[i], row[n + i] = Fraction(1), Fraction(-1)
        row[2 * n + k] = Fraction(-1)
        A.append(row)
        b.append(g.v(S))
    A.append([Fraction(1)] * n + [Fraction(-1)] * n + [Fraction(0)] * len(proper))
    b.append(g.grand)
    x = feasible_point(StandardSystem.from_rows(A, b))
    if x is None:
        return None
    return tuple(x[i] - x[n + i] for i in range(n))


def random_game(rng, n: int, scale: int = 10, denominator: int = 6) -> CoopGame:
    """Random game with rational values; the grand coalition is drawn near the best two-block split."""
    values = {}
    for S in range(1, 1 << n):
        k = bin(S).count("1")
        values[S] = Fraction(rng.randint(0, scale * k * denominator), denominator)
    full = (1 << n) - 1
    base = max(values[S] + values[full & ~S] for S in range(1, full)) if n > 1 else values[full]
    values[full] = base + Fraction(rng.randint(-scale * denominator, scale * n * denominator), denominator)
    return CoopGame(n, values)
