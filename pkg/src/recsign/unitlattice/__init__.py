"""Lattices of multiples modulo g, torus point sets and square-hitting guarantees."""

from ._accel import BACKEND
from .lattice import (
    LatticeBasis2,
    LgLattice,
    SuccessiveMinima,
    bender_guarantee,
    crt_solve,
    gauss_reduce,
    membership,
    minimax_horizontal_gap,
    minkowski_check,
    orbit_residues,
    pair_inequality,
    reduced_basis,
    short_vector_bound,
    successive_minima,
)
from .torus import (
    AlwaysHitReport,
    EmptySquare,
    TorusPointSet,
    TorusSquare,
    apply_s,
    apply_tau,
    canonical_form,
    check_hypotheses,
    empty_square_witness,
    exhaustive_square_hit,
    hitting_indices,
    is_square_empty,
    multiples_from_lattice,
    multiples_mod1,
    rectangle_always_hit,
    square_always_hit,
    symmetry_orbit,
)
