"""Lambda-graph systems for subshifts.

Construction of synchronizing leveled labeled graph presentations,
exact K-group / Bowen-Franks computations, and symbol-expansion flow
moves, with a small catalog of built-in subshifts and a CLI.
"""

from .catalog import (
    adjacency_matrix,
    cantor_horizon_dyck,
    cantor_horizon_markov_dyck,
    dyck,
    fischer_cover,
    full_shift,
    golden_mean,
    markov_dyck,
    sofic_from_graph,
)
from .errors import (
    BudgetExceeded,
    ClassResolutionError,
    LevelMismatchError,
    LgskError,
    NotWellDefined,
    QuotientError,
    UndeterminedTower,
    ValidationError,
)
from .flow import (
    ExpansionContext,
    compare_invariants,
    eta_b,
    expand,
    invariance_report,
    phi_b,
    psi_b,
    sync_transfer_check,
    xi_b,
)
from .intalg import FgAbelianGroup, smith_normal_form
from .ktheory import (
    GroupTower,
    MatrixSystem,
    bowen_franks,
    extract_matrix_system,
    k0_tower,
    k1_tower,
    stationary_bf,
)
from .lgs import (
    LambdaGraphSystem,
    LgsVertex,
    are_isomorphic,
    build_lambda_sync_lgs,
    check_iota_irreducible,
    launching_vertices,
    reduce_lgs,
    stationary_lgs,
    validate_lgs,
)
from .sync import (
    check_lambda_synchronizing,
    enumerate_sync_words,
    is_intrinsically_synchronizing,
    is_l_synchronizing,
    past_equiv_classes,
)
from .words import (
    Dyck,
    Expanded,
    FullShift,
    MarkovDyck,
    SftForbidden,
    SoficGraph,
    enumerate_words,
    is_admissible,
    left_extensions,
    right_extensions,
    spec_from_json,
    spec_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # catalog
    "adjacency_matrix",
    "cantor_horizon_dyck",
    "cantor_horizon_markov_dyck",
    "dyck",
    "fischer_cover",
    "full_shift",
    "golden_mean",
    "markov_dyck",
    "sofic_from_graph",
    # errors
    "BudgetExceeded",
    "ClassResolutionError",
    "LevelMismatchError",
    "LgskError",
    "NotWellDefined",
    "QuotientError",
    "UndeterminedTower",
    "ValidationError",
    # flow
    "ExpansionContext",
    "compare_invariants",
    "eta_b",
    "expand",
    "invariance_report",
    "phi_b",
    "psi_b",
    "sync_transfer_check",
    "xi_b",
    # integer algebra
    "FgAbelianGroup",
    "smith_normal_form",
    # k-theory
    "GroupTower",
    "MatrixSystem",
    "bowen_franks",
    "extract_matrix_system",
    "k0_tower",
    "k1_tower",
    "stationary_bf",
    # lambda-graph systems
    "LambdaGraphSystem",
    "LgsVertex",
    "are_isomorphic",
    "build_lambda_sync_lgs",
    "check_iota_irreducible",
    "launching_vertices",
    "reduce_lgs",
    "stationary_lgs",
    "validate_lgs",
    # synchronization
    "check_lambda_synchronizing",
    "enumerate_sync_words",
    "is_intrinsically_synchronizing",
    "is_l_synchronizing",
    "past_equiv_classes",
    # word languages
    "Dyck",
    "Expanded",
    "FullShift",
    "MarkovDyck",
    "SftForbidden",
    "SoficGraph",
    "enumerate_words",
    "is_admissible",
    "left_extensions",
    "right_extensions",
    "spec_from_json",
    "spec_to_json",
]
