"""Point configurations ``(V, r)`` and the instance file format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from .exact_linalg import format_rational, parse_rational, rank

Vector = tuple[Fraction, ...]


class InstanceError(ValueError):
    """Malformed instance data."""


@dataclass(frozen=True)
class PointConfiguration:
    """``m`` rational points in ``Q^d`` together with a reference point ``r``.

    Points are indexed ``0 .. m-1``; duplicates are allowed and stay distinct.
    """

    points: tuple[Vector, ...]
    r: Vector
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if not self.points:
            raise InstanceError("a configuration needs at least one point")
        d = len(self.r)
        for i, p in enumerate(self.points):
            if len(p) != d:
                raise InstanceError(f"point {i} has dimension {len(p)}, expected {d}")
        if self.labels is not None:
            if len(self.labels) != len(self.points):
                raise InstanceError("need exactly one label per point")
            if len(set(self.labels)) != len(self.labels):
                raise InstanceError("labels must be distinct")

    @classmethod
    def build(cls, points: Iterable[Iterable], r: Iterable,
              labels: Optional[Iterable[str]] = None) -> "PointConfiguration":
        """Coerce ints, Fractions, or ``"p/q"`` strings into a configuration."""
        try:
            pts = tuple(tuple(parse_rational(x) for x in p) for p in points)
            rr = tuple(parse_rational(x) for x in r)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InstanceError(str(exc)) from exc
        return cls(pts, rr, tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.r)

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i + 1)

    def subconfiguration(self, mask: int) -> "PointConfiguration":
        idx = [i for i in range(self.m) if mask >> i & 1]
        labels = tuple(self.labels[i] for i in idx) if self.labels else None
        return PointConfiguration(tuple(self.points[i] for i in idx), self.r, labels)


def affine_dim_of(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull; -1 for an empty list."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def affine_dim(cfg: PointConfiguration) -> int:
    return affine_dim_of(cfg.points)


def in_relint_hull(cfg: PointConfiguration) -> bool:
    """Whether ``r`` is in the relative interior of ``conv(V)``.

    True exactly when some weight vector is positive on every point.
    """
    from .lp_core import StandardSystem, relint_point

    x = relint_point(StandardSystem.for_points(cfg.points, cfg.r))
    return x is not None and all(v > 0 for v in x)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def central_projection(points: Iterable[Iterable], r: Iterable,
                       labels: Optional[Iterable[str]] = None) -> PointConfiguration:
    """Project points from the origin onto the hyperplane ``<x, r> = |r|^2``.

    Balancedness with respect to the open ray through ``r`` becomes ordinary
    ``r``-balancedness of the projected configuration.
    """
    cfg = PointConfiguration.build(points, r, labels)
    rr = _dot(cfg.r, cfg.r)
    out = []
    for i, p in enumerate(cfg.points):
        s = _dot(p, cfg.r)
        if s <= 0:
            raise InstanceError(f"point {i} has <v, r> = {format_rational(s)}, must be positive")
        f = rr / s
        out.append(tuple(f * x for x in p))
    return PointConfiguration(tuple(out), cfg.r, cfg.labels)


def instance_from_dict(data: dict[str, Any]) -> PointConfiguration:
    if not isinstance(data, dict) or "points" not in data or "r" not in data:
        raise InstanceError("instance must be an object with 'points' and 'r'")
    return PointConfiguration.build(data["points"], data["r"], data.get("labels"))


def instance_to_dict(cfg: PointConfiguration) -> dict[str, Any]:
    out: dict[str, Any] = {
        "points": [[format_rational(x) for x in p] for p in cfg.points],
        "r": [format_rational(x) for x in cfg.r],
    }
    if cfg.labels is not None:
        out["labels"] = list(cfg.labels)
    return out


def load_instance(path: str | Path) -> PointConfiguration:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    return instance_from_dict(data)


def dump_instance(cfg: PointConfiguration) -> str:
    return json.dumps(instance_to_dict(cfg))
