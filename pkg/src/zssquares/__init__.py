"""Exhaustive search for zero-sum-square-free {-1, +1} matrices."""

from .matrix import (
    BinaryMatrix,
    MatrixFormatError,
    PartialFill,
    Square,
    completes_zero_sum_square,
    discrepancy,
    find_zero_sum_square,
    is_zero_sum_square_free,
    parse_matrix,
    parse_matrices,
    render_matrix,
    square_disc,
)
from .search import Emit, EnumerationQuery, EnumerationReport, collect_matrices, count_all_unpruned, enumerate_matrices
from .split import SplitDescriptor, Variant, classify_split, corollary2_check, make_t_split, split_disc_formula
from .symmetry import Spatial, SymmetryElement, apply, canonical_form, dedup

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "Emit",
    "EnumerationQuery",
    "EnumerationReport",
    "MatrixFormatError",
    "PartialFill",
    "Spatial",
    "SplitDescriptor",
    "Square",
    "SymmetryElement",
    "Variant",
    "apply",
    "canonical_form",
    "classify_split",
    "collect_matrices",
    "completes_zero_sum_square",
    "corollary2_check",
    "count_all_unpruned",
    "dedup",
    "discrepancy",
    "enumerate_matrices",
    "find_zero_sum_square",
    "is_zero_sum_square_free",
    "make_t_split",
    "parse_matrices",
    "parse_matrix",
    "render_matrix",
    "split_disc_formula",
    "square_disc",
]
