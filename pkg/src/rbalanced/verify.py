"""Seeded random theorem-verification campaigns."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Iterator, Optional

from .balanced_core import balanced_lattice, weight_polytope
from .complexes import (
    FaceCapExceeded,
    alexander_dual,
    balanced_order_complex,
    complement_iso,
    default_face_cap,
    unbalanced_complex,
    weak_order_complex,
)
from .exact_linalg import format_rational
from .geometry import PointConfiguration, affine_dim, in_relint_hull, instance_to_dict
from .homology import HomologyProfile, reduced_homology


@dataclass(frozen=True)
class CampaignSettings:
    seed: int = 0
    trials: int = 25
    m_min: int = 4
    m_max: int = 7
    d_min: int = 2
    d_max: int = 3
    coord_bound: int = 5
    denominator: int = 1
    face_cap: Optional[int] = None
    boundary_r: bool = False
    timings: bool = False


def sample_configuration(rng: random.Random, m: int, d: int, bound: int = 5,
                         denominator: int = 1, boundary_r: bool = False) -> PointConfiguration:
    """Random points with ``r`` a positive convex combination of all of them.

    With ``boundary_r`` the combination may put zero weight on some points,
    which can push ``r`` out of the relative interior.
    """
    q = denominator
    pts = [tuple(Fraction(rng.randint(-bound * q, bound * q), q) for _ in range(d)) for _ in range(m)]
    if boundary_r:
        w = [rng.randint(0, 1) * rng.randint(1, 10) for _ in range(m)]
        if not any(w):
            w[rng.randrange(m)] = 1
    else:
        w = [rng.randint(1, 10) for _ in range(m)]
    total = sum(w)
    r = tuple(sum((w[i] * pts[i][j] for i in range(m)), Fraction(0)) / total for j in range(d))
    return PointConfiguration(tuple(pts), r)


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


def _profile(p: HomologyProfile) -> dict[str, Any]:
    return {
        "betti": {str(i): b for i, b in sorted(p.betti.items()) if b},
        "torsion": {str(i): list(t) for i, t in sorted(p.torsion.items())},
    }


def _sphere_check(p: HomologyProfile, n: int) -> dict[str, Any]:
    ok = not p.torsion and p.nonzero_betti() == {n: 1}
    return {"expected_sphere": n, **_profile(p), "pass": ok}


def check_configuration(cfg: PointConfiguration, face_cap: Optional[int] = None) -> dict[str, Any]:
    """Run every theorem check on one configuration; returns a JSON-ready report."""
    cap = default_face_cap() if face_cap is None else face_cap
    m, k = cfg.m, affine_dim(cfg)
    report: dict[str, Any] = {"m": m, "d": cfg.d, "k": k}
    hyp = in_relint_hull(cfg)
    report["hypothesis"] = {"r_in_relint": hyp}
    if not hyp:
        report["status"] = "SKIP"
        report["reason"] = "hypothesis unmet; skipped"
        return report
    try:
        lattice = balanced_lattice(cfg)
        poly = weight_polytope(cfg)
        order_bal = balanced_order_complex(cfg, cap)
        order_weak = weak_order_complex(cfg, cap)
        K = unbalanced_complex(cfg)
        dual = alexander_dual(K)
        homs = {name: reduced_homology(X, cap) for name, X in
                [("balanced_order", order_bal), ("weak_order", order_weak),
                 ("unbalanced", K), ("dual", dual)]}
        iso = complement_iso(cfg, cap)
    except FaceCapExceeded as exc:
        report["status"] = "SKIP"
        report["reason"] = f"face cap: {exc}"
        return report

    n = m - k - 2
    report["minimal_count"] = len(lattice.minimal)
    report["proper_balanced_count"] = len(lattice.proper)
    checks: dict[str, Any] = {
        "balanced_order_sphere": _sphere_check(homs["balanced_order"], n),
        "weak_order_sphere": _sphere_check(homs["weak_order"], n),
        "unbalanced_sphere": _sphere_check(homs["unbalanced"], k - 1),
        "dual_sphere": _sphere_check(homs["dual"], n),
    }
    bk, bd = homs["unbalanced"].betti, homs["dual"].betti
    degrees = set(bd) | {m - i - 3 for i in bk}
    checks["alexander_duality"] = {
        "pass": all(bd.get(i, 0) == bk.get(m - i - 3, 0) for i in degrees),
    }
    checks["complement_iso"] = {"pass": iso.ok, **({"counterexample": iso.counterexample} if not iso.ok else {})}
    expected_chi = -1 if n % 2 else 1
    chi = homs["balanced_order"].euler_reduced
    checks["euler"] = {"expected": expected_chi, "value": chi, "pass": chi == expected_chi}
    checks["polytope_dim"] = {"expected": m - k - 1, "value": poly.dim, "pass": poly.dim == m - k - 1}
    report["checks"] = checks
    torsion = any(h.torsion for h in homs.values())
    ok = all(c["pass"] for c in checks.values()) and not torsion
    report["status"] = "PASS" if ok else "FAIL"
    if not ok:
        report["instance"] = instance_to_dict(cfg)
        report["homology"] = {name: h.to_dict() for name, h in homs.items()}
    return report


def run_trial(settings: CampaignSettings, trial: int) -> dict[str, Any]:
    rng = trial_rng(settings.seed, trial)
    m = rng.randint(settings.m_min, settings.m_max)
    d = rng.randint(settings.d_min, settings.d_max)
    cfg = sample_configuration(rng, m, d, settings.coord_bound, settings.denominator, settings.boundary_r)
    start = time.perf_counter()
    report = {"trial": trial, "seed": settings.seed, **check_configuration(cfg, settings.face_cap)}
    report["r"] = [format_rational(x) for x in cfg.r]
    if settings.timings:
        report["seconds"] = round(time.perf_counter() - start, 4)
    return report


def _run(args: tuple[CampaignSettings, int]) -> dict[str, Any]:
    return run_trial(*args)


def campaign(settings: CampaignSettings, jobs: int = 1) -> Iterator[dict[str, Any]]:
    """Reports in trial order, whatever the number of worker processes."""
    work = [(settings, t) for t in range(settings.trials)]
    if jobs <= 1:
        yield from map(_run, work)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run, work)


def format_text(report: dict[str, Any]) -> str:
    head = f"trial {report['trial']} {report['status']} m={report['m']} d={report['d']} k={report['k']}"
    if report["status"] == "SKIP":
        return f"{head} ({report['reason']})"
    checks = report["checks"]
    n = checks["balanced_order_sphere"]["expected_sphere"]
    failed = [name for name, c in checks.items() if not c["pass"]]
    tail = f" sphere={n} minimal={report['minimal_count']} balanced={report['proper_balanced_count']}"
    if failed:
        tail += " failed=" + ",".join(failed)
    return head + tail


def settings_dict(s: CampaignSettings) -> dict[str, Any]:
    return asdict(s)
