from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from rbalanced.balanced_core import (
    PreconditionError,
    balanced_closure,
    balanced_lattice,
    indices_of,
    is_balanced,
    is_weakly_balanced,
    mask_of,
    minimal_balanced_subsets,
    minimal_subset_through,
    union_closure,
    weakly_balanced_subsets,
    weight_polytope,
)
from rbalanced.coop_games import shapley_configuration
from rbalanced.geometry import PointConfiguration, affine_dim, in_relint_hull

from conftest import configurations, cross_polytope
from oracles import balanced_oracle, inclusion_minimal, vertex_oracle, weak_oracle


def M(*one_based):
    return mask_of(i - 1 for i in one_based)


def test_weak_balancedness_examples(sq, tri):
    assert is_weakly_balanced(sq, M(1, 3))
    assert not is_weakly_balanced(tri, M(1, 2))
    at_point = PointConfiguration.build([[0, 0], [1, 0], [0, 1]], [1, 0])
    assert all(is_weakly_balanced(at_point, S) for S in range(1, 8) if S & M(2))


def test_balancedness_examples(sq, line3):
    assert is_balanced(sq, M(1, 3))
    assert not is_balanced(sq, M(1, 2, 3))
    assert is_balanced(line3, M(2))


def test_empty_subset_rejected(sq):
    for f in (is_balanced, is_weakly_balanced, balanced_closure):
        with pytest.raises(PreconditionError):
            f(sq, 0)
    with pytest.raises(PreconditionError):
        is_balanced(sq, 1 << 4)


@settings(max_examples=50, deadline=None)
@given(configurations(m_max=7))
def test_balancedness_matches_geometric_oracle(cfg):
    for S in range(1, cfg.full_mask + 1):
        assert is_weakly_balanced(cfg, S) == weak_oracle(cfg, S)
        assert is_balanced(cfg, S) == balanced_oracle(cfg, S)


def test_weight_polytope_examples(sq):
    for d in (1, 2, 3, 4):
        poly = weight_polytope(cross_polytope(d))
        assert poly.supports == [0b11 << (2 * i) for i in range(d)]
        for v, s in poly.vertices:
            assert [x for x in v if x] == [F(1, 2), F(1, 2)]
    assert weight_polytope(sq).supports == [M(1, 3), M(2, 4)]


def test_mass_center_configuration_has_six_vertices():
    cfg = shapley_configuration(3)
    # oracle: inclusion-minimal balanced subsets by exhaustive barycentric scan
    oracle = inclusion_minimal(S for S in range(1, 1 << 7) if balanced_oracle(cfg, S))
    assert len(oracle) == 6
    assert minimal_balanced_subsets(cfg) == oracle


@settings(max_examples=50, deadline=None)
@given(configurations(m_max=7))
def test_vertices_match_oracle(cfg):
    poly = weight_polytope(cfg)
    assert {v for v, _ in poly.vertices} == vertex_oracle(cfg)
    oracle = inclusion_minimal(S for S in range(1, cfg.full_mask + 1) if balanced_oracle(cfg, S))
    assert minimal_balanced_subsets(cfg) == oracle


def test_minimal_subsets_are_affinely_independent():
    cfg = shapley_configuration(3)
    for S in minimal_balanced_subsets(cfg):
        sub = cfg.subconfiguration(S)
        assert affine_dim(sub) + 1 == len(indices_of(S))


def test_balanced_closure_examples(sq, line3):
    assert balanced_closure(sq, M(1, 3)) == M(1, 3)
    assert balanced_closure(sq, M(1, 2, 3)) == M(1, 3)
    assert balanced_closure(line3, M(1, 2, 3)) == M(1, 2, 3)
    with pytest.raises(PreconditionError):
        balanced_closure(sq, M(1, 2))


@settings(max_examples=40, deadline=None)
@given(configurations(m_max=7))
def test_closure_is_a_kernel_operator(cfg):
    weak = weakly_balanced_subsets(cfg, proper=False)
    g = {S: balanced_closure(cfg, S) for S in weak}
    for S in weak:
        assert g[S] & ~S == 0
        assert is_balanced(cfg, g[S])
        assert g[g[S]] == g[S]
        if is_balanced(cfg, S):
            assert g[S] == S
    for S in weak:
        for T in weak:
            if S & ~T == 0:
                assert g[S] & ~g[T] == 0


def test_minimal_subset_through_examples(sq, cross3):
    assert minimal_subset_through(sq, M(1, 3), 0) == M(1, 3)
    assert minimal_subset_through(sq, M(1, 2, 3, 4), 1) == M(2, 4)
    assert minimal_subset_through(cross3, cross3.full_mask, 0) == M(1, 2)
    with pytest.raises(PreconditionError):
        minimal_subset_through(sq, M(1, 3), 1)
    with pytest.raises(PreconditionError):
        minimal_subset_through(sq, M(1, 2, 3), 0)


@settings(max_examples=40, deadline=None)
@given(configurations(m_max=7))
def test_minimal_subset_through_every_point(cfg):
    for S in balanced_lattice(cfg).elements:
        for v in indices_of(S):
            T = minimal_subset_through(cfg, S, v)
            assert T & ~S == 0 and T >> v & 1 and T in minimal_balanced_subsets(cfg)


def test_lattice_examples(sq, cross3):
    L = balanced_lattice(sq)
    assert L.elements == (M(1, 3), M(2, 4), M(1, 2, 3, 4))
    assert L.proper == (M(1, 3), M(2, 4)) and L.has_top
    L = balanced_lattice(cross3)
    assert len(L.elements) == 7 and len(L.proper) == 6


@settings(max_examples=50, deadline=None)
@given(configurations(m_max=7))
def test_lattice_is_exactly_the_balanced_sets(cfg):
    L = balanced_lattice(cfg)
    scan = [S for S in range(1, cfg.full_mask + 1) if is_balanced(cfg, S)]
    assert list(L.elements) == scan
    for S in L.elements:
        u = 0
        for T in L.generators[S]:
            u |= T
        assert u == S
    assert set(union_closure(L.elements)) == set(L.elements)


@settings(max_examples=40, deadline=None)
@given(configurations(m_max=7, interior=True))
def test_polytope_dimension(cfg):
    assert in_relint_hull(cfg)
    assert weight_polytope(cfg).dim == cfg.m - affine_dim(cfg) - 1


def test_weakly_balanced_subsets_upward_closed(sq):
    assert weakly_balanced_subsets(sq) == sorted(
        S for S in range(1, 15) if is_weakly_balanced(sq, S))
