"""Bipartite operators invariant under local diagonal unitary and orthogonal groups.

An LDOI operator on C^d (x) C^d is stored as a matrix triple ``(A, B, C)``
with a shared diagonal. The package covers the triple algebra, unitarity
and duality tests, operator Schmidt rank, entanglement measures, the
Hadamardness search over sign matrices and unitary discrimination.
"""

__version__ = "0.1.0"

from .triples import (
    EPS_EQ,
    InvarianceClass,
    MatrixTriple,
    TripleError,
    adjoint,
    partial_transpose,
    realign,
    subspace_basis,
    times_swap,
    transpose,
    triple_compose,
    triple_product,
    validate,
)
from .embed import NotLDOIError, blocks, embed, extract
from .unitary import EPS_U, Field, check_unitary, is_unitary, random_unitary, subgroup_dim
from .special import DualFamily, check_special, is_dual, make_dual, perfect_witness
from .schmidt import make_rank, schmidt_coefficients, schmidt_rank
from .entangle import profile, profile_closed_form, profile_oracle
from .hadamardness import SignMatrix, exhaustive_min, h_measure
from .discriminate import EQUAL_SPECTRUM, arc, k_bound, k_copies, local_range_sample

__all__ = [
    "__version__",
    "EPS_EQ",
    "EPS_U",
    "InvarianceClass",
    "Field",
    "MatrixTriple",
    "TripleError",
    "NotLDOIError",
    "validate",
    "triple_product",
    "triple_compose",
    "transpose",
    "adjoint",
    "realign",
    "partial_transpose",
    "times_swap",
    "subspace_basis",
    "embed",
    "extract",
    "blocks",
    "check_unitary",
    "is_unitary",
    "random_unitary",
    "subgroup_dim",
    "DualFamily",
    "check_special",
    "is_dual",
    "make_dual",
    "perfect_witness",
    "schmidt_rank",
    "schmidt_coefficients",
    "make_rank",
    "profile",
    "profile_closed_form",
    "profile_oracle",
    "SignMatrix",
    "h_measure",
    "exhaustive_min",
    "EQUAL_SPECTRUM",
    "arc",
    "k_copies",
    "k_bound",
    "local_range_sample",
]
