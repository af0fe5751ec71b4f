"""Exit criteria, one test each; every check is exact.

A summary line per criterion is printed at the end of the pytest run.
"""

import random
from collections import Counter

import pytest

from rbalanced.balanced_core import (
    balanced_closure,
    balanced_lattice,
    indices_of,
    is_balanced,
    weakly_balanced_subsets,
    weight_polytope,
    weight_system,
)
from rbalanced.cli import main
from rbalanced.complexes import (
    alexander_dual,
    balanced_order_complex,
    complement_iso,
    unbalanced_complex,
    weak_order_complex,
)
from rbalanced.coop_games import (
    family_mask,
    is_balanced_collection,
    minimal_balanced_collections,
    minimal_collections_by_scan,
    random_game,
    shapley_configuration,
    core_allocation,
    core_nonempty,
)
from rbalanced.geometry import affine_dim, affine_dim_of, in_relint_hull
from rbalanced.homology import euler_characteristic, is_sphere_profile, reduced_homology
from rbalanced.lp_core import enumerate_vertices, max_coordinate, min_coordinate, relint_point, support
from rbalanced.verify import sample_configuration

from conftest import ACCEPTANCE_LINES, cross_polytope, square, triangle
from oracles import inclusion_minimal

CAMPAIGN_SEED = 2024
CAMPAIGN_SIZE = 100


def record(number, name, ok, detail=""):
    ACCEPTANCE_LINES.append(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {name}"
                            + (f"  ({detail})" if detail else ""))
    assert ok, detail


class Instance:
    def __init__(self, cfg):
        self.cfg = cfg
        self.m = cfg.m
        self.k = affine_dim(cfg)
        self.lattice = balanced_lattice(cfg)
        self.poly = weight_polytope(cfg)


@pytest.fixture(scope="module")
def campaign():
    """Random interior configurations with m in [4, 8], d in [2, 4] and a nonempty proper part."""
    rng = random.Random(CAMPAIGN_SEED)
    out, skipped = [], 0
    while len(out) < CAMPAIGN_SIZE:
        cfg = sample_configuration(rng, rng.randint(4, 8), rng.randint(2, 4))
        assert in_relint_hull(cfg)
        inst = Instance(cfg)
        if not inst.lattice.proper:
            skipped += 1
            continue
        out.append(inst)
    assert skipped < 10 * CAMPAIGN_SIZE
    return out


@pytest.fixture(scope="module")
def homologies(campaign):
    out = []
    for inst in campaign:
        K = unbalanced_complex(inst.cfg)
        out.append({
            "balanced": reduced_homology(balanced_order_complex(inst.cfg)),
            "weak": reduced_homology(weak_order_complex(inst.cfg)),
            "K": reduced_homology(K),
            "dual": reduced_homology(alexander_dual(K)),
            "balanced_complex": balanced_order_complex(inst.cfg),
        })
    return out


def test_criterion_01_order_complexes_are_spheres(campaign, homologies):
    bad = [i for i, (inst, h) in enumerate(zip(campaign, homologies))
           if not (is_sphere_profile(h["balanced"], inst.m - inst.k - 2)
                   and is_sphere_profile(h["weak"], inst.m - inst.k - 2))]
    dims = Counter(inst.m - inst.k - 2 for inst in campaign)
    record(1, f"balanced/weak order complexes ~ S^(m-k-2) on {len(campaign)} instances", not bad,
           f"sphere degrees {dict(sorted(dims.items()))}" if not bad else f"failures at {bad}")


def test_criterion_02_unbalanced_complex_and_dual(campaign, homologies):
    bad = [i for i, (inst, h) in enumerate(zip(campaign, homologies))
           if not (is_sphere_profile(h["K"], inst.k - 1)
                   and is_sphere_profile(h["dual"], inst.m - inst.k - 2))]
    record(2, "K ~ S^(k-1) and K* ~ S^(m-k-2), torsion-free", not bad, f"failures at {bad}" if bad else "")


def test_criterion_03_complement_isomorphism(campaign):
    results = [complement_iso(inst.cfg) for inst in campaign]
    bad = [(i, r.counterexample) for i, r in enumerate(results) if not r.ok or not r.bijection]
    record(3, "sd(K*) ~= order complex of weakly balanced proper subsets", not bad, str(bad[:3]) if bad else "")


def test_criterion_04_minimal_subsets_match_exhaustive_scan(campaign):
    bad = []
    for i, inst in enumerate(campaign):
        scan = [S for S in range(1, inst.cfg.full_mask + 1) if is_balanced(inst.cfg, S)]
        if inst.poly.supports != inclusion_minimal(scan):
            bad.append(i)
    record(4, "vertex supports == inclusion-minimal balanced sets (2^m scan)", not bad,
           f"failures at {bad}" if bad else "")


def _balanced_scan(inst):
    return [S for S in range(1, inst.cfg.full_mask + 1) if is_balanced(inst.cfg, S)]


def test_criterion_05_lemma_suite(campaign):
    failures = Counter()
    for inst in campaign:
        cfg, poly, lattice = inst.cfg, inst.poly, inst.lattice
        sys = weight_system(cfg)
        mins = poly.supports
        scan = _balanced_scan(inst)

        # (a) unique weight vector, affine independence
        for S in mins:
            sub = sys.restrict(S)
            for i in indices_of(S):
                if max_coordinate(sub, i)[0] != min_coordinate(sub, i)[0]:
                    failures["a"] += 1
            if affine_dim_of([cfg.points[i] for i in indices_of(S)]) + 1 != len(indices_of(S)):
                failures["a"] += 1

        # (b) union of minimal balanced subsets
        for S in scan:
            u = 0
            for T in mins:
                if T & ~S == 0:
                    u |= T
            if u != S:
                failures["b"] += 1

        # (c) vertices of lambda(S) are the lambda(S_i)
        for S in scan:
            restricted = set(enumerate_vertices(sys.restrict(S)))
            if restricted != set(poly.vertices_in(S)):
                failures["c"] += 1

        # (d) faces from zero-forcing, named by relint support
        faces = {}
        for S in range(1, cfg.full_mask + 1):
            x = relint_point(sys.restrict(S))
            if x is not None:
                name = support(x)
                faces[name] = frozenset(poly.vertices_in(name))
        if sorted(faces) != list(lattice.elements) or sorted(faces) != scan:
            failures["d"] += 1
        if len(set(faces.values())) != len(faces):
            failures["d"] += 1
        for S in faces:
            for T in faces:
                if (S & ~T == 0) != (faces[S] <= faces[T]):
                    failures["d"] += 1

        # (e) dimension
        if poly.dim != inst.m - inst.k - 1:
            failures["e"] += 1

        # (f) closure operator
        weak = weakly_balanced_subsets(cfg, proper=False)
        g = {S: balanced_closure(cfg, S) for S in weak}
        balanced = set(scan)
        for S in weak:
            if g[S] & ~S or g[g[S]] != g[S] or g[S] not in balanced:
                failures["f"] += 1
            if S in balanced and g[S] != S:
                failures["f"] += 1
            for T in weak:
                if S & ~T == 0 and g[S] & ~g[T]:
                    failures["f"] += 1
    record(5, "lemma suite (a)-(f)", not failures, dict(failures) if failures else "")


def test_criterion_06_euler(campaign, homologies):
    bad = [i for i, (inst, h) in enumerate(zip(campaign, homologies))
           if euler_characteristic(h["balanced_complex"]) != (-1) ** (inst.m - inst.k - 2)]
    record(6, "reduced Euler characteristic of the balanced order complex", not bad,
           f"failures at {bad}" if bad else "")


def test_criterion_07_cooperative_specialization():
    counts = {n: len(minimal_balanced_collections(n)) for n in (2, 3)}
    n4_basis = [c.sets for c in minimal_balanced_collections(4)]
    n4_scan = minimal_collections_by_scan(4)
    mismatches = 0
    for n in (1, 2, 3):
        cfg = shapley_configuration(n)
        for fam_mask in range(1, 1 << cfg.m):
            fam = [S for S in range(1, 1 << n) if fam_mask >> (S - 1) & 1]
            mismatches += is_balanced_collection(n, fam)[0] != is_balanced(cfg, fam_mask)
    rng = random.Random(7)
    cfg4 = shapley_configuration(4)
    for _ in range(1000):
        fam = sorted(rng.sample(range(1, 16), rng.randint(1, 15)))
        mismatches += is_balanced_collection(4, fam)[0] != is_balanced(cfg4, family_mask(fam))
    ok = counts == {2: 2, 3: 6} and n4_basis == n4_scan and mismatches == 0
    record(7, "minimal collection counts and combinatorial/geometric equivalence", ok,
           f"counts {counts}, n=4 basis {len(n4_basis)} scan {len(n4_scan)}, mismatches {mismatches}")


def test_criterion_08_bondareva_shapley():
    rng = random.Random(8)
    disagreements, verdicts = 0, Counter()
    for _ in range(100):
        g = random_game(rng, rng.choice([3, 4]))
        a = core_nonempty(g)
        b = core_allocation(g) is not None
        disagreements += a != b
        verdicts[a] += 1
    record(8, "Bondareva-Shapley criterion vs direct core LP on 100 games", disagreements == 0,
           f"nonempty {verdicts[True]}, empty {verdicts[False]}, disagreements {disagreements}")


def test_criterion_09_named_instances():
    problems = []
    sq = square()
    if weight_polytope(sq).supports != [0b0101, 0b1010]:
        problems.append("square minimal")
    if not is_sphere_profile(reduced_homology(balanced_order_complex(sq)), 0):
        problems.append("square order complex")
    tri = triangle()
    if balanced_lattice(tri).proper:
        problems.append("triangle proper part")
    if not is_sphere_profile(reduced_homology(balanced_order_complex(tri)), -1):
        problems.append("triangle degree -1")
    if not is_sphere_profile(reduced_homology(unbalanced_complex(tri)), 1):
        problems.append("triangle K")
    c3 = cross_polytope(3)
    if weight_polytope(c3).supports != [0b000011, 0b001100, 0b110000]:
        problems.append("cross minimal")
    if not is_sphere_profile(reduced_homology(balanced_order_complex(c3)), 1):
        problems.append("cross order complex")
    if not is_sphere_profile(reduced_homology(unbalanced_complex(c3)), 2):
        problems.append("cross K")
    record(9, "named instances: square, triangle, cross-polytope", not problems, ", ".join(problems))


def test_criterion_10_determinism(capsys):
    argv = ["verify", "--seed", "5", "--trials", "12", "--m-min", "4", "--m-max", "8",
            "--d-min", "2", "--d-max", "4", "--format", "json"]
    outputs = []
    for jobs in ("1", "1", "2"):
        assert main(argv + ["--jobs", jobs]) == 0
        outputs.append(capsys.readouterr().out)
    ok = outputs[0] == outputs[1] == outputs[2] and len(outputs[0].splitlines()) == 12
    record(10, "verify output byte-identical across runs and job counts", ok)
