"""Exact combinatorics of vector-enhanced nilpotent orbits.

The library computes closure orders and dimensions for nilpotent orbits
enhanced by a vector, realizes orbit representatives as exact integer
matrices so every closed formula can be checked against a rank computation,
and stratifies the associated chain varieties to verify the stratum
dimension bounds mechanically at small sizes.
"""

__version__ = "0.1.0"

from .partitions import (
    SizeMismatchError,
    composition,
    dominance_leq,
    enumerate_partitions,
    n_stat,
    nilpotent_orbit_dim,
    partition,
    partition_covers,
    transpose,
)
from .bipartitions import (
    Bipartition,
    MoveRecord,
    bipartition,
    bipartition_sum,
    biorder_leq,
    codim1_boundary,
    degeneration_delta,
    degeneration_moves,
    enhanced_orbit_dim,
    enumerate_bipartitions,
    format_bipartition,
    parse_bipartition,
)
from .signed import (
    InvalidDiagramError,
    Signature,
    SignedPartition,
    SignedQuasibipartition,
    enumerate_signed_partitions,
    enumerate_sq,
    pair_orbit_dim_bound,
    signed_partition,
    sq_codim1_predicate,
    sq_forget_vector,
    sq_generic_predicate,
    sq_subordinates,
    subordinate_pair,
    transfer_image,
    validate_sq,
)
from .matrices import (
    EnhancedPairPoint,
    EnhancedPoint,
    Matrix,
    PairPoint,
    commutant_vector_dim,
    kernel_basis,
    membership_U_lambda,
    membership_U_mpi,
    orbit_dim_enhanced,
    orbit_dim_enhanced_pair,
    orbit_dim_pair,
    pair_commutant_vector_dim,
    point_from_bipartition,
    point_from_signed_partition,
    point_from_sq,
    rank_exact,
    type_of_enhanced_point,
    type_of_pair,
)
from .quiver import (
    ChainConstructionError,
    ConjectureReport,
    QuiverData,
    StratumRecord,
    enumerate_strata,
    generic_point_jacobian,
    naive_dims,
    quiver_data,
    verify_conjecture,
)
