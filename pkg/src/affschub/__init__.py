"""Affine permutations, their essential sets, and Schubert conditions on affine flags."""

from .affine_perm import (
    AffinePermutation, dominates, identity, new_affine_permutation, rank_fn, residue_split,
    shift_sigma, simple_reflection,
)
from .diagram import (
    Box, CrossoutStatus, EssentialBox, crossout_status, essential_boxes_in,
    essential_fundamental_domain, is_essential, l_min, n_count, stabilization_bound,
)
from .errors import (
    AffSchubError, BandTooNarrow, BoxNotEssential, IndexMismatch, PeriodMismatch,
    ResidueCollision, SingularMatrix, ZeroArgument,
)
from .laurent import (
    Laurent, LaurentMatrix, adjugate, det, in_O, index, is_iwahori, is_opposite_iwahori,
    matrix_from_rows, perm_to_matrix, sigma_matrix,
)
from .lattice_oracle import opposite_cell_of, oracle_dim, oracle_membership, oracle_table
from .rank_engine import (
    FinitarySearchResult, MembershipReport, emit_generators, exact_rank, finitary_dim_search,
    minors_condition, theorem_membership_test,
)
from .unfold import box_submatrix, column, column_support, dump_window, entry, support_bound, window

__version__ = "0.1.0"
