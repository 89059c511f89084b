"""Mortality thresholds of NFAs and nonnegative matrix sets."""

from .core import Dfa, Nfa, as_dfa, image, image_word, is_sink, is_total, parse, serialize
from .errors import MortalityError
from .families import (
    FamilyInstance,
    canonical_word_counter,
    canonical_word_dfa_tail,
    canonical_word_linear,
    gen_binary,
    gen_dfa_tail,
    gen_linear,
    gen_ternary,
    lift_careful_to_mortality,
)
from .matrices import BoolMatrix, MatrixSet, exponent, matrices_to_nfa, nfa_to_matrices, product_is_zero, sum_matrix
from .solver import (
    SolveResult,
    SyncResult,
    is_mortal_word,
    solve_careful_sync,
    solve_d1_directing,
    solve_mortality,
    solve_reset_threshold,
)

__version__ = "0.1.0"
