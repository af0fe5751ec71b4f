"""Command-line interface.

Point indices on the command line and in every emitted subset are 1-based.
Exit codes: 0 success, 1 failed verification or violated precondition,
2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .balanced_core import (
    PreconditionError,
    balanced_closure,
    balanced_lattice,
    balanced_witness,
    indices_of,
    is_balanced,
    is_weakly_balanced,
    mask_of,
    weight_polytope,
)
from .complexes import (
    FaceCapExceeded,
    SimplicialComplex,
    alexander_dual,
    balanced_order_complex,
    complex_from_dict,
    default_face_cap,
    dump_complex,
    unbalanced_complex,
    weak_order_complex,
)
from .coop_games import (
    PlayerCapExceeded,
    bondareva_shapley,
    coalition_key,
    core_allocation,
    game_from_dict,
    shapley_configuration,
)
from .exact_linalg import format_rational
from .geometry import InstanceError, PointConfiguration, dump_instance, instance_from_dict
from .homology import reduced_homology
from .verify import CampaignSettings, campaign, format_text

COMPLEXES = ("unbalanced", "dual", "balanced-order", "weak-order")


class UsageError(Exception):
    """Bad input; maps to exit code 2."""


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _instance(path: str) -> PointConfiguration:
    return instance_from_dict(_read_json(path))


def _one_based(mask: int) -> list[int]:
    return [i + 1 for i in indices_of(mask)]


def _vec(x) -> list[str]:
    return [format_rational(v) for v in x]


def _emit(obj: Any, fmt: str, text: Optional[str] = None) -> None:
    if fmt == "json" or text is None:
        print(json.dumps(obj))
    else:
        print(text)


def _parse_subset(text: str, m: int) -> int:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise PreconditionError("subset must be nonempty")
    try:
        idx = [int(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad subset {text!r}") from exc
    bad = [i for i in idx if not 1 <= i <= m]
    if bad:
        raise PreconditionError(f"indices {bad} out of range 1..{m}")
    return mask_of(i - 1 for i in idx)


def cmd_check(args) -> int:
    cfg = _instance(args.input)
    S = _parse_subset(args.subset, cfg.m)
    weak = is_weakly_balanced(cfg, S)
    out: dict[str, Any] = {"subset": _one_based(S), "weakly": weak, "balanced": is_balanced(cfg, S)}
    parts = [f"weakly: {str(weak).lower()}", f"balanced: {str(out['balanced']).lower()}"]
    if weak:
        w = balanced_witness(cfg, S)
        closure = balanced_closure(cfg, S)
        out["witness"] = _vec(w)
        out["closure"] = _one_based(closure)
        parts.append("witness " + ",".join(out["witness"]))
        parts.append("closure " + ",".join(map(str, out["closure"])))
    _emit(out, args.format, "; ".join(parts))
    return 0


def cmd_minimal(args) -> int:
    cfg = _instance(args.input)
    poly = weight_polytope(cfg)
    out = {"minimal": [_one_based(s) for s in poly.supports],
           "weight_vectors": [_vec(v) for v, _ in poly.vertices],
           "dim": poly.dim}
    lines = ["{" + ",".join(map(str, _one_based(s))) + "}  " + ",".join(_vec(v)) for v, s in poly.vertices]
    _emit(out, args.format, "\n".join(lines) if lines else "no weight vectors")
    return 0


def cmd_lattice(args) -> int:
    cfg = _instance(args.input)
    L = balanced_lattice(cfg)
    out = {
        "elements": [_one_based(s) for s in L.elements],
        "top_balanced": L.has_top,
        "proper_count": len(L.proper),
        "generators": [[_one_based(g) for g in L.generators[s]] for s in L.elements],
    }
    lines = [f"{len(L.elements)} balanced subsets ({len(L.proper)} proper), whole set "
             f"{'balanced' if L.has_top else 'not balanced'}"]
    for s in L.elements:
        gens = " ".join("{" + ",".join(map(str, _one_based(g))) + "}" for g in L.generators[s])
        lines.append("{" + ",".join(map(str, _one_based(s))) + "}  <- " + gens)
    _emit(out, args.format, "\n".join(lines))
    return 0


def _build_complex(cfg: PointConfiguration, which: str, cap: int) -> SimplicialComplex:
    if which == "unbalanced":
        K = unbalanced_complex(cfg)
    elif which == "dual":
        K = alexander_dual(unbalanced_complex(cfg))
    elif which == "balanced-order":
        return balanced_order_complex(cfg, cap).relabel(lambda s: tuple(_one_based(s)))
    else:
        return weak_order_complex(cfg, cap).relabel(lambda s: tuple(_one_based(s)))
    return K.relabel(lambda i: i + 1)


def _complex_text(K: SimplicialComplex) -> str:
    def show(v):
        return "{" + ",".join(map(str, v)) + "}" if isinstance(v, tuple) else str(v)

    if K.is_void:
        return "void complex"
    order = {g: i for i, g in enumerate(K.ground)}
    return "\n".join("[" + " ".join(show(v) for v in sorted(f, key=order.__getitem__)) + "]"
                     for f in K.facets)


def _complex_or_instance(path: str):
    data = _read_json(path)
    if isinstance(data, dict) and "facets" in data:
        try:
            return complex_from_dict(data), None
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return None, instance_from_dict(data)


def cmd_complex(args) -> int:
    cfg = _instance(args.input)
    K = _build_complex(cfg, args.which, args.face_cap)
    if args.format == "json":
        print(dump_complex(K))
    else:
        print(_complex_text(K))
    return 0


def cmd_dual(args) -> int:
    K, cfg = _complex_or_instance(args.input)
    D = alexander_dual(K) if K is not None else _build_complex(cfg, "dual", args.face_cap)
    if args.format == "json":
        print(dump_complex(D))
    else:
        print(_complex_text(D))
    return 0


def cmd_homology(args) -> int:
    K, cfg = _complex_or_instance(args.input)
    if K is None:
        K = _build_complex(cfg, args.which, args.face_cap)
    p = reduced_homology(K, args.face_cap)
    out = p.to_dict()
    sph = out["sphere"]
    text = ("betti " + " ".join(f"{i}:{b}" for i, b in sorted(p.betti.items()) if b)
            + ("; torsion " + str(out["torsion"]) if p.torsion else "")
            + f"; euler {p.euler_reduced}; "
            + (f"sphere n={sph['n']}" if sph["is_sphere"] else "not a sphere profile"))
    _emit(out, args.format, text)
    return 0


def cmd_shapley(args) -> int:
    cfg = shapley_configuration(args.n, args.player_cap)
    print(dump_instance(cfg))
    return 0


def cmd_core(args) -> int:
    try:
        g = game_from_dict(_read_json(args.input))
    except InstanceError as exc:
        raise UsageError(str(exc)) from exc
    verdict = bondareva_shapley(g, args.player_cap)
    out: dict[str, Any] = {"core_nonempty": verdict.nonempty}
    if verdict.nonempty:
        x = core_allocation(g, args.player_cap)
        out["allocation"] = _vec(x)
        text = "core nonempty; witness allocation " + ",".join(out["allocation"])
    else:
        c = verdict.violating
        out["violating"] = {"sets": [coalition_key(S, g.n) for S in c.sets], "weights": _vec(c.weights)}
        out["excess"] = format_rational(verdict.excess)
        text = "core empty; violating collection " + c.describe(g.n)
    _emit(out, args.format, text)
    return 0


def cmd_verify(args) -> int:
    settings = CampaignSettings(
        seed=args.seed, trials=args.trials, m_min=args.m_min, m_max=args.m_max,
        d_min=args.d_min, d_max=args.d_max, coord_bound=args.coord_bound,
        denominator=args.denominator, face_cap=args.face_cap, boundary_r=args.boundary_r,
        timings=args.timings,
    )
    if settings.m_min < 1 or settings.m_min > settings.m_max or settings.d_min < 1 or settings.d_min > settings.d_max:
        raise UsageError("need 1 <= m-min <= m-max and 1 <= d-min <= d-max")
    failed = 0
    for report in campaign(settings, args.jobs):
        failed += report["status"] == "FAIL"
        if args.format == "json":
            print(json.dumps(report, sort_keys=True))
        else:
            print(format_text(report))
        sys.stdout.flush()
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rbalanced", description="Exact r-balanced subset toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, *, instance=True, fmt="json"):
        sp = sub.add_parser(name, help=help)
        if instance:
            sp.add_argument("--input", "-i", required=True, help="instance JSON file ('-' for stdin)")
        sp.add_argument("--format", choices=("json", "text"), default=fmt)
        sp.add_argument("--face-cap", type=int, default=default_face_cap())
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "balancedness of one subset", fmt="text").add_argument(
        "--subset", required=True, help="comma-separated 1-based indices")
    add("minimal", cmd_minimal, "minimal balanced subsets (vertices of F(V,r))")
    add("lattice", cmd_lattice, "lattice of balanced subsets")
    add("complex", cmd_complex, "emit one of the associated complexes").add_argument(
        "--which", choices=COMPLEXES, default="unbalanced")
    add("homology", cmd_homology, "reduced integer homology of a complex or instance").add_argument(
        "--which", choices=COMPLEXES, default="weak-order")
    add("dual", cmd_dual, "Alexander dual of a complex, or of K(V,r) for an instance")

    sh = add("shapley", cmd_shapley, "mass-center instance for n players", instance=False)
    sh.add_argument("n", type=int)
    sh.add_argument("--player-cap", type=int, default=None)
    core = add("core", cmd_core, "Bondareva-Shapley core test for a game file", fmt="text")
    core.add_argument("--player-cap", type=int, default=None)

    v = add("verify", cmd_verify, "random theorem-verification campaign", instance=False, fmt="text")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=25)
    v.add_argument("--m-min", type=int, default=4)
    v.add_argument("--m-max", type=int, default=7)
    v.add_argument("--d-min", type=int, default=2)
    v.add_argument("--d-max", type=int, default=3)
    v.add_argument("--coord-bound", type=int, default=5)
    v.add_argument("--denominator", type=int, default=1, help="coordinates are multiples of 1/denominator")
    v.add_argument("--boundary-r", action="store_true", help="allow r on the boundary of conv(V)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="add per-trial seconds (breaks byte-identity)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, PlayerCapExceeded, FaceCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
