"""Exact mutation engine for group species with potentials.

The package computes cluster-algebra F-polynomials and g-vectors two
independent ways (a combinatorial seed recursion and decorated-representation
mutation) and machine-checks the classical conjectural properties on
desk-scale mutation balls.
"""

__version__ = "0.1.0"

from .exchange import ExchangeMatrix, find_skew_symmetrizer, mutate_matrix
from .mutation import GSP, mutate, mutate_gsp, premutate, probe_nondegeneracy
from .reps import DecoratedRep, f_polynomial, g_vector, h_vector, mutate_gspdr_sequence, mutate_rep
from .seeds import FGState, YSeed, compute_fg, fg_mutate, tropical_h_from_F, y_seed_mutate
from .species import GroupSpecies, c3_species, exchange_matrix, species_from_matrix

__all__ = [
    "ExchangeMatrix",
    "find_skew_symmetrizer",
    "mutate_matrix",
    "GSP",
    "mutate",
    "mutate_gsp",
    "premutate",
    "probe_nondegeneracy",
    "DecoratedRep",
    "f_polynomial",
    "g_vector",
    "h_vector",
    "mutate_gspdr_sequence",
    "mutate_rep",
    "FGState",
    "YSeed",
    "compute_fg",
    "fg_mutate",
    "tropical_h_from_F",
    "y_seed_mutate",
    "GroupSpecies",
    "c3_species",
    "exchange_matrix",
    "species_from_matrix",
]
