"""Concurrence of pure states and CHSH-overlap lower bounds for mixed ones.

For a pure state and any bipartition, ``C^2 = (1/4) sum y^2 Q`` over all
qubit-pair projections. For mixed states the same sum gives
``C >= (1/2) sqrt(sum y^2 Q)``. Multipartite versions sum over every
bipartition of the parties.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pairs import Bipartition, bipartitions, flatten, pair_table
from .qmat import QState, purity
from .sogen import index_pairs


def _require_pure(s: QState, what: str):
    if not s.is_pure:
        raise ValueError(f"{what} is defined here for pure states only")


def _default_partition(s: QState, p: Bipartition | None) -> Bipartition:
    if p is not None:
        return p
    if s.nparties != 2:
        raise ValueError("a bipartition is required for states with more than two parties")
    return Bipartition((0,), (1,))


def _amplitude_matrix(s: QState, p: Bipartition) -> np.ndarray:
    flat = flatten(s, p)
    return flat.body.reshape(flat.dims)


def pure_concurrence(s: QState, p: Bipartition | None = None) -> float:
    """``sqrt(2 (1 - Tr rho_L^2))`` across the bipartition ``p``."""
    _require_pure(s, "pure_concurrence")
    a = _amplitude_matrix(s, _default_partition(s, p))
    rho_l = a @ a.conj().T
    return float(np.sqrt(max(2.0 * (1.0 - purity(rho_l)), 0.0)))


def concurrence_expansion(s: QState, p: Bipartition | None = None) -> float:
    """Squared concurrence as four times the sum of squared 2x2 minors.

    ``4 sum_{i<j} sum_{k<l} |a_ik a_jl - a_il a_jk|^2`` over the amplitude
    matrix of the flattened state.
    """
    _require_pure(s, "concurrence_expansion")
    a = _amplitude_matrix(s, _default_partition(s, p))
    rows, cols = index_pairs(a.shape[0]), index_pairs(a.shape[1])
    i, j = rows[:, 0][:, None], rows[:, 1][:, None]
    k, l = cols[:, 0][None, :], cols[:, 1][None, :]
    minors = a[i, k] * a[j, l] - a[i, l] * a[j, k]
    return float(4.0 * np.sum(np.abs(minors) ** 2))


def overlap_sum(s: QState, p: Bipartition | None = None) -> float:
    """``sum over (alpha, beta) of y^2 Q`` for one bipartition."""
    return pair_table(s, _default_partition(s, p)).weighted_sum


def squared_concurrence_from_overlaps(s: QState, p: Bipartition | None = None) -> float:
    """``(1/4) sum y^2 Q``; equals the squared concurrence of a pure state."""
    _require_pure(s, "squared_concurrence_from_overlaps")
    return 0.25 * overlap_sum(s, p)


def mixed_lower_bound(s: QState, p: Bipartition | None = None) -> float:
    return 0.5 * float(np.sqrt(overlap_sum(s, p)))


def multipartite_concurrence_pure(s: QState) -> float:
    """Generalized concurrence ``sqrt(sum_p 2 (1 - Tr rho_p^2))`` over all bipartitions."""
    _require_pure(s, "multipartite_concurrence_pure")
    return float(np.sqrt(sum(pure_concurrence(s, p) ** 2 for p in bipartitions(s.nparties))))


def partition_sums(s: QState) -> dict[Bipartition, float]:
    return {p: overlap_sum(s, p) for p in bipartitions(s.nparties)}


def multipartite_lower_bound(s: QState) -> float:
    return 0.5 * float(np.sqrt(sum(partition_sums(s).values())))


@dataclass(frozen=True)
class ConcurrenceReport:
    value: float | None
    lower_bound: float
    per_partition: dict[Bipartition, float] = field(default_factory=dict)


def concurrence_report(s: QState) -> ConcurrenceReport:
    """Exact value (pure input only), lower bound and per-bipartition sums."""
    sums = partition_sums(s)
    bound = 0.5 * float(np.sqrt(sum(sums.values())))
    value = multipartite_concurrence_pure(s) if s.is_pure else None
    return ConcurrenceReport(value, bound, sums)
