"""Exact tools for r-balanced subsets of point configurations."""

from .balanced_core import (
    BalancedLattice,
    WeightPolytope,
    balanced_closure,
    balanced_lattice,
    indices_of,
    is_balanced,
    is_weakly_balanced,
    mask_of,
    minimal_balanced_subsets,
    minimal_subset_through,
    weight_polytope,
)
from .complexes import (
    Poset,
    SimplicialComplex,
    alexander_dual,
    complement_iso,
    order_complex,
    unbalanced_complex,
)
from .geometry import PointConfiguration, affine_dim, central_projection, in_relint_hull
from .homology import HomologyProfile, euler_characteristic, is_sphere_profile, reduced_homology

__version__ = "0.1.0"

__all__ = [
    "BalancedLattice",
    "WeightPolytope",
    "balanced_closure",
    "balanced_lattice",
    "indices_of",
    "is_balanced",
    "is_weakly_balanced",
    "mask_of",
    "minimal_balanced_subsets",
    "minimal_subset_through",
    "weight_polytope",
    "Poset",
    "SimplicialComplex",
    "alexander_dual",
    "complement_iso",
    "order_complex",
    "unbalanced_complex",
    "PointConfiguration",
    "affine_dim",
    "central_projection",
    "in_relint_hull",
    "HomologyProfile",
    "euler_characteristic",
    "is_sphere_profile",
    "reduced_homology",
]
