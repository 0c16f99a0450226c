"""Channel-state duality toolkit.

Four closely related ways of turning a linear map ``phi: L(H_A) -> L(H_B)``
into an operator on ``H_A (x) H_B`` (the basis-free J matrix, the Choi
matrix and two dual-space variants), predicates that distinguish complete
positivity from positivity on pure tensors, the Jordan / time-orientation
structure of matrix algebras, and a seeded harness that checks the
correspondences numerically.
"""
from .bases import OperatorBasis, gell_mann, haar_rotated_basis, hs_inner, matrix_units, rotated_basis
from .duality import (
    DualityState,
    Variant,
    choi_forward,
    choi_inverse,
    forward,
    inverse,
    j_forward,
    j_inverse,
    pairing,
    state_from_inner_products,
    to_variant,
)
from .errors import ChoilabError, DimensionError, NotHermitianError, NotUnitaryError, SchemaError, VariantError
from .harness import SuiteId, SuiteResult, TheoremSuite, run_all, run_suite
from .jordan import Orientation, evolve, jordan_product, order_derivation, star_product
from .linalg import BipartiteIndex, partial_trace, partial_transpose
from .maps import (
    DecomposableMap,
    MapClass,
    QuantumMap,
    compose,
    conjugate_map,
    identity_map,
    map_from_function,
    map_from_kraus,
    map_from_stinespring,
    precompose_transpose,
    random_map,
    transpose_map,
)
from .predicates import (
    NotPSDError,
    PoptConfig,
    PredicateReport,
    Verdict,
    is_co_cp,
    is_cp,
    is_hermitian,
    is_popt,
    is_ppt_state,
    is_psd,
    is_trace_preserving,
)

__version__ = "0.1.0"

__all__ = [
    "OperatorBasis",
    "gell_mann",
    "haar_rotated_basis",
    "hs_inner",
    "matrix_units",
    "rotated_basis",
    "DualityState",
    "Variant",
    "choi_forward",
    "choi_inverse",
    "forward",
    "inverse",
    "j_forward",
    "j_inverse",
    "pairing",
    "state_from_inner_products",
    "to_variant",
    "ChoilabError",
    "DimensionError",
    "NotHermitianError",
    "NotUnitaryError",
    "SchemaError",
    "VariantError",
    "SuiteId",
    "SuiteResult",
    "TheoremSuite",
    "run_all",
    "run_suite",
    "Orientation",
    "evolve",
    "jordan_product",
    "order_derivation",
    "star_product",
    "BipartiteIndex",
    "partial_trace",
    "partial_transpose",
    "DecomposableMap",
    "MapClass",
    "QuantumMap",
    "compose",
    "conjugate_map",
    "identity_map",
    "map_from_function",
    "map_from_kraus",
    "map_from_stinespring",
    "precompose_transpose",
    "random_map",
    "transpose_map",
    "NotPSDError",
    "PoptConfig",
    "PredicateReport",
    "Verdict",
    "is_co_cp",
    "is_cp",
    "is_hermitian",
    "is_popt",
    "is_ppt_state",
    "is_psd",
    "is_trace_preserving",
]
