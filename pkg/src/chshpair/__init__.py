"""Entanglement of multipartite qudit states from CHSH overlaps of qubit pairs."""
from .chsh import ChshResult, bell_oracle_gamma, correlation_matrix, horodecki_gamma
from .distill import DistillReport, distillable_chsh, lu_enhanced_overlap, reduction_criterion
from .entanglement import (
    concurrence_expansion,
    concurrence_report,
    mixed_lower_bound,
    multipartite_concurrence_pure,
    multipartite_lower_bound,
    pure_concurrence,
    squared_concurrence_from_overlaps,
)
from .families import FamilySpec, ghz_noise, isotropic, max_entangled, named_state
from .gte import gte_bound, gte_report, gte_xyz, mixed_gte_test, pure_gte_concurrence, pure_gte_test
from .pairs import Bipartition, PairProjection, all_pair_overlaps, bipartitions, flatten, pair_table
from .qmat import InvalidStateError, QState, hermitian_eigs, kron, partial_trace, validate
from .scan import ThresholdScan, bisect_threshold, reproduce_table

__version__ = "0.1.0"
