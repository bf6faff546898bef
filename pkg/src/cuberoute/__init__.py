"""Dressed-hypercube spin networks.

Build binary Cayley networks (hypercubes dressed with extra links),
compute their exact integer spectra, evolve single-excitation states in
O(N log N), verify that quarter-period evolution permutes the node
states, and plan perfect routes between arbitrary node pairs.
"""

from .cayley import (
    BitVector,
    CayleyGraph,
    ColumnarReport,
    GeneratingSet,
    OutOfRangeError,
    adjacency_matrix,
    build_cayley_graph,
    build_generating_set,
    build_path_graph,
    cartesian_product,
    check_columnar,
    dressed_hypercube,
    generator_masks,
    kronecker_term,
)
from .dynamics import (
    DimensionMismatchError,
    FidelitySeries,
    TooLargeError,
    basis_state,
    evolve,
    evolve_dense_oracle,
    fidelity_series,
    hadamard_transform,
)
from .routing import (
    NotAPermutationError,
    PermutationSpec,
    RoutePlan,
    RouteStep,
    UnroutableError,
    execute_route,
    extract_permutation,
    format_cycles,
    plan_route,
    predicted_permutation,
)
from .spectral import (
    NoValidOffsetError,
    SignVector,
    SpectralTable,
    build_spectral_table,
    eigenvalue_by_summation,
    eigenvalue_closed_form,
    phase_offset,
    rational_ratio_check,
)

__version__ = "0.1.0"
