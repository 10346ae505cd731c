"""Invariant rings of cyclic groups acting diagonally in two and three variables:
minimal generators, quadratic Groebner bases of the relations, and graded Betti
tables checked against Hochster's formula."""

from .betti import (
    BettiTable,
    closed_form_betti,
    closed_form_invariant_2d,
    closed_form_invariant_3d,
    hochster_betti,
    invariant_ring_betti,
    linear_strand_betti,
    path_cycle_betti,
    purity_check,
)
from .core import AmbientRing, Binomial, WeightSystem, cmp_2d, cmp_3d, normal_form, s_pair_reduces
from .invariants import (
    build_relations,
    build_relations_2d,
    build_relations_3d,
    factor_into,
    groebner_verify,
    minimal_generators,
    minimal_generators_2d,
    minimal_generators_3d,
    pi,
)
from .simplicial import (
    Graph,
    SimplicialComplex,
    build_Xs,
    clique_complex,
    complement,
    components,
    induced,
    reduced_homology_dims,
)

__version__ = "0.1.0"
