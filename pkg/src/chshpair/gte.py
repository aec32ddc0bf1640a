"""Genuine tripartite entanglement from CHSH overlaps.

``X, Y, Z`` are the largest pair overlaps across ``1|23``, ``2|13`` and
``3|12``. A pure state is genuinely tripartite entangled iff all three are
positive; any biseparable state obeys ``X + Y + Z <= 8``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pairs import Bipartition, PairTable, pair_table
from .qmat import QState, partial_trace, purity

GTE_TOL = 1e-9
BISEPARABLE_BOUND = 8.0

TRIPARTITIONS = (
    Bipartition((0,), (1, 2)),
    Bipartition((1,), (0, 2)),
    Bipartition((2,), (0, 1)),
)


def _require_three(s: QState):
    if s.nparties != 3:
        raise ValueError(f"tripartite criteria need exactly 3 parties, got {s.nparties}")


def _tables(s: QState) -> list[PairTable]:
    _require_three(s)
    return [pair_table(s, p) for p in TRIPARTITIONS]


def gte_xyz(s: QState) -> tuple[float, float, float]:
    x, y, z = (t.max_q for t in _tables(s))
    return x, y, z


def pure_gte_test(s: QState, tol: float = GTE_TOL) -> bool:
    """True iff every bipartition of the pure state holds a CHSH-violating pair."""
    if not s.is_pure:
        raise ValueError("the min(X, Y, Z) > 0 test is exact for pure states only")
    return min(gte_xyz(s)) > tol


def mixed_gte_test(s: QState, tol: float = GTE_TOL) -> tuple[bool, float]:
    """``(detected, X + Y + Z)``; detection is sufficient, never necessary."""
    total = float(sum(gte_xyz(s)))
    return total > BISEPARABLE_BOUND + tol, total


def pure_gte_concurrence(s: QState) -> float:
    """``sqrt(min_i (1 - Tr rho_i^2))`` over the single-party marginals."""
    _require_three(s)
    if not s.is_pure:
        raise ValueError("GTE concurrence of mixed states is a convex roof; use gte_bound instead")
    linear = [1.0 - purity(partial_trace(s, [k])) for k in range(3)]
    return float(np.sqrt(max(min(linear), 0.0)))


def _bound_from_sums(sums, d: int) -> float:
    return float(sum(np.sqrt(v) for v in sums) / (6.0 * np.sqrt(2.0)) - (2.0 / 3.0) * np.sqrt((d - 1) / d))


def _local_dim(s: QState) -> int:
    _require_three(s)
    if len(set(s.dims)) != 1:
        raise ValueError(f"the GTE concurrence bound assumes equal local dimensions, got {list(s.dims)}")
    return s.dims[0]


def gte_bound(s: QState) -> float:
    """Lower bound on the GTE concurrence (may be negative; not clamped)."""
    d = _local_dim(s)
    return _bound_from_sums([t.weighted_sum for t in _tables(s)], d)


@dataclass(frozen=True)
class GteReport:
    x: float
    y: float
    z: float
    sum: float
    pure_gte: bool | None
    mixed_gte_detected: bool
    bound: float | None
    pure_gte_concurrence: float | None


def gte_report(s: QState, tol: float = GTE_TOL) -> GteReport:
    """All tripartite quantities from a single pass over the three bipartitions.

    ``bound`` is ``None`` when local dimensions differ; the pure-only fields
    are ``None`` for mixed input.
    """
    tables = _tables(s)
    x, y, z = (t.max_q for t in tables)
    total = x + y + z
    bound = _bound_from_sums([t.weighted_sum for t in tables], s.dims[0]) if len(set(s.dims)) == 1 else None
    pure = s.is_pure
    return GteReport(
        x=x, y=y, z=z, sum=total,
        pure_gte=(min(x, y, z) > tol) if pure else None,
        mixed_gte_detected=total > BISEPARABLE_BOUND + tol,
        bound=bound,
        pure_gte_concurrence=pure_gte_concurrence(s) if pure else None,
    )
