"""Finite simplicial complexes, posets and order complexes.

A complex is a ground list plus its facets; faces are frozensets of ground
elements.  The void complex has no facets at all, while ``{∅}`` has the
single empty facet; the two are different spaces (nothing vs. ``S^-1``).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from .balanced_core import (
    balanced_lattice,
    indices_of,
    is_weakly_balanced,
    weakly_balanced_subsets,
)
from .geometry import PointConfiguration

DEFAULT_FACE_CAP = 200_000


def default_face_cap() -> int:
    return int(os.environ.get("RBALANCED_FACE_CAP", DEFAULT_FACE_CAP))


class FaceCapExceeded(RuntimeError):
    """Full face enumeration would exceed the configured cap."""


def _maximal(sets: Iterable[frozenset]) -> list[frozenset]:
    by_size = sorted(set(sets), key=len, reverse=True)
    kept: list[frozenset] = []
    for s in by_size:
        if not any(s <= t for t in kept):
            kept.append(s)
    return kept


@dataclass(frozen=True)
class SimplicialComplex:
    ground: tuple[Hashable, ...]
    facets: tuple[frozenset, ...]
    _faces: Optional[frozenset] = field(default=None, compare=False, repr=False, hash=False)

    @classmethod
    def from_faces(cls, ground: Sequence[Hashable], faces: Iterable[Iterable]) -> "SimplicialComplex":
        faces = [frozenset(f) for f in faces]
        return cls.from_facets(ground, _maximal(faces))

    @classmethod
    def from_facets(cls, ground: Sequence[Hashable], facets: Iterable[Iterable],
                    faces: Optional[Iterable[frozenset]] = None) -> "SimplicialComplex":
        ground = tuple(ground)
        gset = set(ground)
        if len(gset) != len(ground):
            raise ValueError("ground elements must be distinct")
        kept = _maximal(frozenset(f) for f in facets)
        for f in kept:
            if not f <= gset:
                raise ValueError(f"facet {sorted(f, key=repr)} leaves the ground set")
        order = {g: i for i, g in enumerate(ground)}
        kept.sort(key=lambda f: (len(f), sorted(order[v] for v in f)))
        return cls(ground, tuple(kept), frozenset(faces) if faces is not None else None)

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """-1 for ``{∅}``; the void complex also reports -1."""
        return max((len(f) - 1 for f in self.facets), default=-1)

    def __contains__(self, face: Iterable) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self, cap: Optional[int] = None) -> frozenset:
        if self._faces is not None:
            if cap is not None and len(self._faces) > cap:
                raise FaceCapExceeded(f"{len(self._faces)} faces exceed cap {cap}")
            return self._faces
        cap = default_face_cap() if cap is None else cap
        out: set[frozenset] = set()
        for f in self.facets:
            items = sorted(f, key=repr)
            for k in range(len(items) + 1):
                for c in combinations(items, k):
                    out.add(frozenset(c))
                if len(out) > cap:
                    raise FaceCapExceeded(f"more than {cap} faces")
        return frozenset(out)

    def f_vector(self, cap: Optional[int] = None) -> dict[int, int]:
        counts: dict[int, int] = {}
        for f in self.faces(cap):
            counts[len(f) - 1] = counts.get(len(f) - 1, 0) + 1
        return dict(sorted(counts.items()))

    def relabel(self, mapping: Callable[[Hashable], Hashable]) -> "SimplicialComplex":
        return SimplicialComplex.from_facets(
            [mapping(g) for g in self.ground],
            [[mapping(v) for v in f] for f in self.facets],
        )

    def to_dict(self, encode: Callable[[Hashable], Any] = lambda x: x) -> dict[str, Any]:
        order = {g: i for i, g in enumerate(self.ground)}
        return {
            "ground": [encode(g) for g in self.ground],
            "facets": [[encode(v) for v in sorted(f, key=order.__getitem__)] for f in self.facets],
        }


def complex_from_dict(data: dict[str, Any]) -> SimplicialComplex:
    if not isinstance(data, dict) or "ground" not in data or "facets" not in data:
        raise ValueError("complex must be an object with 'ground' and 'facets'")

    def key(x):
        return tuple(x) if isinstance(x, list) else x

    return SimplicialComplex.from_facets(
        [key(g) for g in data["ground"]], [[key(v) for v in f] for f in data["facets"]]
    )


def dump_complex(K: SimplicialComplex) -> str:
    return json.dumps(K.to_dict(lambda x: list(x) if isinstance(x, tuple) else x))


@dataclass(frozen=True)
class Poset:
    """Finite poset given by its elements and a ``leq`` oracle.

    The relation is tabulated once as bitsets (``up[i]`` holds every ``j``
    with ``elements[i] <= elements[j]``) and checked for being a partial order.
    """

    elements: tuple[Hashable, ...]
    leq: Callable[[Hashable, Hashable], bool]
    up: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        els = self.elements
        if len(set(els)) != len(els):
            raise ValueError("poset elements must be distinct")
        up = tuple(sum(1 << j for j, b in enumerate(els) if self.leq(a, b)) for a in els)
        for i, a in enumerate(els):
            if not up[i] >> i & 1:
                raise ValueError(f"relation is not reflexive at {a!r}")
            for j in _bits(up[i]):
                if j != i and up[j] >> i & 1:
                    raise ValueError(f"relation is not antisymmetric on {a!r}, {els[j]!r}")
                if up[j] & ~up[i]:
                    raise ValueError(f"relation is not transitive above {a!r}")
        object.__setattr__(self, "up", up)

    def less(self, a: Hashable, b: Hashable) -> bool:
        return a != b and self.leq(a, b)

    def covers(self) -> list[list[int]]:
        """``covers()[i]``: indices of the elements covering ``elements[i]``."""
        strict = [u & ~(1 << i) for i, u in enumerate(self.up)]
        out = []
        for i, s in enumerate(strict):
            blocked = 0
            for j in _bits(s):
                blocked |= strict[j]
            out.append(list(_bits(s & ~blocked)))
        return out


def _bits(x: int):
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


def subset_poset(masks: Iterable[int]) -> Poset:
    return Poset(tuple(masks), lambda a, b: a & ~b == 0)


def order_complex(P: Poset, cap: Optional[int] = None) -> SimplicialComplex:
    """Chains of ``P``; the empty poset gives ``{∅}``."""
    cap = default_face_cap() if cap is None else cap
    els = P.elements
    n = len(els)
    strict_up = [list(_bits(u & ~(1 << i))) for i, u in enumerate(P.up)]
    faces: list[frozenset] = [frozenset()]
    # Each chain is grown upward from its top element only, so it appears once.
    stack = [(i, (els[i],)) for i in range(n)]
    while stack:
        top, chain = stack.pop()
        faces.append(frozenset(chain))
        if len(faces) > cap:
            raise FaceCapExceeded(f"order complex has more than {cap} faces")
        for j in strict_up[top]:
            stack.append((j, chain + (els[j],)))

    covers = P.covers()
    has_lower = 0
    for c in covers:
        for j in c:
            has_lower |= 1 << j
    facets: list[frozenset] = []
    stack = [(i, (els[i],)) for i in range(n) if not has_lower >> i & 1]
    while stack:
        top, chain = stack.pop()
        if not covers[top]:
            facets.append(frozenset(chain))
        for j in covers[top]:
            stack.append((j, chain + (els[j],)))
    if not n:
        facets = [frozenset()]
    return SimplicialComplex.from_facets(els, facets, faces)


def unbalanced_complex(cfg: PointConfiguration) -> SimplicialComplex:
    """``K(V, r)``: subsets whose hull misses ``r``, grown level by level."""
    m = cfg.m
    level = [0]
    faces = [0]
    while level:
        nxt = set()
        current = set(level)
        for S in level:
            for i in range(m):
                if S >> i & 1:
                    continue
                T = S | 1 << i
                if T in nxt:
                    continue
                if any(T & ~(1 << j) not in current for j in indices_of(T)):
                    continue
                if not is_weakly_balanced(cfg, T):
                    nxt.add(T)
        level = sorted(nxt)
        faces.extend(level)
    face_sets = [frozenset(indices_of(S)) for S in faces]
    return SimplicialComplex.from_facets(range(m), _maximal(face_sets), face_sets)


def minimal_nonfaces(K: SimplicialComplex) -> list[frozenset]:
    ground = K.ground
    n = len(ground)
    if len(ground) > 24:
        raise FaceCapExceeded("ground set too large for exhaustive non-face scan")
    facet_masks = [sum(1 << ground.index(v) for v in f) for f in K.facets]

    def is_face(S: int) -> bool:
        return any(S & ~F == 0 for F in facet_masks)

    out = []
    for S in range(1 << n):
        if is_face(S):
            continue
        if all(is_face(S & ~(1 << j)) for j in indices_of(S)):
            out.append(frozenset(ground[j] for j in indices_of(S)))
    return out


def alexander_dual(K: SimplicialComplex) -> SimplicialComplex:
    """``K* = {σ : ground \\ σ ∉ K}``, with facets the complements of minimal non-faces."""
    g = frozenset(K.ground)
    return SimplicialComplex.from_facets(K.ground, [g - t for t in minimal_nonfaces(K)])


def balanced_order_complex(cfg: PointConfiguration, cap: Optional[int] = None) -> SimplicialComplex:
    """Order complex of the proper balanced subsets (the proper face poset of ``F(V, r)``)."""
    return order_complex(subset_poset(balanced_lattice(cfg).proper), cap)


def weak_order_complex(cfg: PointConfiguration, cap: Optional[int] = None) -> SimplicialComplex:
    """Order complex of the proper weakly balanced subsets."""
    return order_complex(subset_poset(weakly_balanced_subsets(cfg)), cap)


def face_poset(K: SimplicialComplex, cap: Optional[int] = None) -> Poset:
    """Nonempty faces of ``K`` under inclusion, as masks over the ground order."""
    pos = {g: i for i, g in enumerate(K.ground)}
    masks = sorted(sum(1 << pos[v] for v in f) for f in K.faces(cap) if f)
    return subset_poset(masks)


@dataclass(frozen=True)
class ComplementIso:
    ok: bool
    bijection: dict[int, int]
    counterexample: Optional[str] = None


def complement_iso(cfg: PointConfiguration, cap: Optional[int] = None) -> ComplementIso:
    """Check that ``σ -> V \\ σ`` identifies ``sd(K*)`` with the order complex of weak balanced sets.

    ``K*`` comes from the LP-built unbalanced complex; the weakly balanced
    sets come from the minimal balanced subsets.  The bijection maps face
    masks of ``K*`` to subset masks.
    """
    full = cfg.full_mask
    dual = alexander_dual(unbalanced_complex(cfg))
    sd_poset = face_poset(dual, cap)
    weak = weakly_balanced_subsets(cfg)
    weak_set = set(weak)
    bij = {s: full & ~s for s in sd_poset.elements}
    for s, t in bij.items():
        if t not in weak_set:
            return ComplementIso(False, bij, f"face {indices_of(s)} of K* maps to {indices_of(t)}, not weakly balanced")
    if len(set(bij.values())) != len(weak_set) or set(bij.values()) != weak_set:
        missing = sorted(weak_set - set(bij.values()))
        return ComplementIso(False, bij, f"weakly balanced sets with no dual face: {[indices_of(s) for s in missing]}")
    for s, t in combinations(sd_poset.elements, 2):
        if (s & ~t == 0) != (bij[t] & ~bij[s] == 0) or (t & ~s == 0) != (bij[s] & ~bij[t] == 0):
            return ComplementIso(False, bij, f"inclusion not reversed on {indices_of(s)}, {indices_of(t)}")
    sd = order_complex(sd_poset, cap)
    target = order_complex(subset_poset(weak), cap)
    image = sd.relabel(bij.__getitem__)
    if set(image.facets) != set(target.facets):
        return ComplementIso(False, bij, "chains of sd(K*) do not map onto chains of B(V, r)")
    return ComplementIso(True, bij)
