"""Distance labellings of Cayley graphs of finite semigroups."""

from .semigroup import (
    AssociativityError,
    GreenClasses,
    NotCompletelySimpleError,
    ReesDecomposition,
    ReesDecompositionError,
    Semigroup,
    SemigroupError,
    adjoin_zero,
    cyclic_group,
    direct_product,
    left_zero_band,
    members,
    parse_semigroup,
    rees_decompose,
    rees_matrix_semigroup,
    right_zero_band,
    to_mask,
)
from .cayley import INF, CayleyGraph, build_cayley_graph, distances, underlying_undirected
from .labelling import DistanceConstraint, SpanResult, exact_span
from .enumeration import enumerate_semigroups
from .verify import KGrid, VerificationReport, run_campaign

__version__ = "0.1.0"
