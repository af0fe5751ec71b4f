"""Balanced subsets, the weight polytope and its face lattice.

Subsets of a configuration are bitmasks: bit ``i`` stands for point ``i``.
Every enumeration is returned in ascending mask order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .geometry import PointConfiguration, affine_dim_of
from .lp_core import (
    StandardSystem,
    WeightVector,
    enumerate_vertices,
    feasible_point,
    relint_point,
    support,
)

SubsetMask = int


class PreconditionError(ValueError):
    """The arguments violate an operation's precondition."""


def mask_of(indices: Iterable[int]) -> SubsetMask:
    mask = 0
    for i in indices:
        if i < 0:
            raise ValueError(f"negative index {i}")
        mask |= 1 << i
    return mask


def indices_of(mask: SubsetMask) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _check_mask(cfg: PointConfiguration, S: SubsetMask) -> None:
    if S <= 0:
        raise PreconditionError("subset must be nonempty")
    if S >> cfg.m:
        raise PreconditionError(f"subset {indices_of(S)} mentions points beyond m = {cfg.m}")


def weight_system(cfg: PointConfiguration, S: Optional[SubsetMask] = None) -> StandardSystem:
    return StandardSystem.for_points(cfg.points, cfg.r, S)


@lru_cache(maxsize=1 << 16)
def _weak(cfg: PointConfiguration, S: SubsetMask) -> bool:
    return feasible_point(weight_system(cfg, S)) is not None


@lru_cache(maxsize=1 << 16)
def _witness(cfg: PointConfiguration, S: SubsetMask) -> Optional[WeightVector]:
    return relint_point(weight_system(cfg, S))


def is_weakly_balanced(cfg: PointConfiguration, S: SubsetMask) -> bool:
    """``r`` lies in the convex hull of the points in ``S``."""
    _check_mask(cfg, S)
    return _weak(cfg, S)


def balanced_witness(cfg: PointConfiguration, S: SubsetMask) -> Optional[WeightVector]:
    """Weight vector of maximal support inside ``S``, or None if ``S`` is not weakly balanced."""
    _check_mask(cfg, S)
    return _witness(cfg, S)


def is_balanced(cfg: PointConfiguration, S: SubsetMask) -> bool:
    """``r`` lies in the relative interior of the hull of ``S``.

    Equivalently some weight vector has support exactly ``S``.
    """
    _check_mask(cfg, S)
    x = _witness(cfg, S)
    return x is not None and support(x) == S


@dataclass(frozen=True)
class WeightPolytope:
    """``F(V, r)``: the weight vectors, through their vertices."""

    system: StandardSystem
    vertices: tuple[tuple[WeightVector, SubsetMask], ...]
    dim: int

    @property
    def supports(self) -> list[SubsetMask]:
        return [s for _, s in self.vertices]

    def vertices_in(self, S: SubsetMask) -> list[WeightVector]:
        """Vertices of the face ``lambda(S)``, i.e. those supported inside ``S``."""
        return [v for v, s in self.vertices if s & ~S == 0]


@lru_cache(maxsize=256)
def weight_polytope(cfg: PointConfiguration) -> WeightPolytope:
    sys = weight_system(cfg)
    verts = enumerate_vertices(sys)
    pairs = tuple(sorted(((v, support(v)) for v in verts), key=lambda p: (p[1], p[0])))
    return WeightPolytope(sys, pairs, affine_dim_of([v for v, _ in pairs]))


def minimal_balanced_subsets(cfg: PointConfiguration) -> list[SubsetMask]:
    """Inclusion-minimal balanced subsets, read off the vertices of ``F(V, r)``."""
    return weight_polytope(cfg).supports


def balanced_closure(cfg: PointConfiguration, S: SubsetMask) -> SubsetMask:
    """Points of ``S`` on the smallest face of ``conv(S)`` that contains ``r``."""
    _check_mask(cfg, S)
    x = _witness(cfg, S)
    if x is None:
        raise PreconditionError(f"subset {indices_of(S)} is not weakly balanced")
    return support(x)


def minimal_subset_through(cfg: PointConfiguration, S: SubsetMask, v: int) -> SubsetMask:
    """Smallest-mask minimal balanced subset of ``S`` that contains point ``v``."""
    if not S >> v & 1:
        raise PreconditionError(f"point {v} is not in the subset")
    if not is_balanced(cfg, S):
        raise PreconditionError(f"subset {indices_of(S)} is not balanced")
    for T in minimal_balanced_subsets(cfg):
        if T & ~S == 0 and T >> v & 1:
            return T
    raise AssertionError("balanced subset without a minimal balanced subset through v")


def weakly_balanced_subsets(cfg: PointConfiguration, proper: bool = True) -> list[SubsetMask]:
    """All weakly balanced subsets: those containing some minimal balanced subset."""
    mins = minimal_balanced_subsets(cfg)
    top = cfg.full_mask
    out = [S for S in range(1, top + 1) if any(T & ~S == 0 for T in mins)]
    if proper and out and out[-1] == top:
        out.pop()
    return out


@dataclass(frozen=True)
class BalancedLattice:
    """Balanced subsets under inclusion.

    ``elements`` includes the whole set when it is balanced (``has_top``);
    ``proper`` drops it.  ``generators[S]`` lists the minimal balanced
    subsets below ``S``.
    """

    m: int
    elements: tuple[SubsetMask, ...]
    minimal: tuple[SubsetMask, ...]
    generators: dict[SubsetMask, tuple[SubsetMask, ...]]
    has_top: bool

    @property
    def top(self) -> SubsetMask:
        return (1 << self.m) - 1

    @property
    def proper(self) -> tuple[SubsetMask, ...]:
        return tuple(S for S in self.elements if S != self.top)

    def leq(self, a: SubsetMask, b: SubsetMask) -> bool:
        return a & ~b == 0

    def join(self, a: SubsetMask, b: SubsetMask) -> SubsetMask:
        return a | b


def union_closure(generators: Iterable[SubsetMask]) -> list[SubsetMask]:
    closed: set[SubsetMask] = set()
    for g in generators:
        closed |= {g} | {x | g for x in closed}
    return sorted(closed)


def balanced_lattice(cfg: PointConfiguration) -> BalancedLattice:
    mins = tuple(minimal_balanced_subsets(cfg))
    elements = tuple(union_closure(mins))
    gens = {S: tuple(T for T in mins if T & ~S == 0) for S in elements}
    return BalancedLattice(cfg.m, elements, mins, gens, cfg.full_mask in gens)
