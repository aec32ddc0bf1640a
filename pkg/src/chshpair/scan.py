"""Threshold location over one-parameter state families.

Each criterion is shaped so that it is positive exactly where the state is
certified (entangled, distillable, ...) and the threshold is its sign change
in the mixing parameter ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .distill import Q_TOL, RC_TOL, max_overlap, reduction_criterion
from .families import FamilySpec
from .gte import BISEPARABLE_BOUND, TRIPARTITIONS, gte_bound, gte_xyz
from .pairs import Bipartition

CRITERIA = ("overlap_pos", "gte_sum", "gte_bound", "rc")
PRESCAN_POINTS = 16

PUBLISHED = {
    "I": {
        "Range 1": {2: 0.839708, 3: 0.699544, 4: 0.567035},
        "Range 2": {2: 0.788793, 3: 0.731621, 4: 0.705508},
    },
    "II": {
        "Range 1": {2: 0.707107, 3: 0.616781, 4: 0.546918, 5: 0.491272, 6: 0.445903, 7: 0.408205},
        "Range 2": {2: 0.33333, 3: 0.25, 4: 0.2, 5: 0.16667, 6: 0.142857, 7: 0.125},
    },
    "III": {
        "Range": {2: 0.54692, 3: 0.34917, 4: 0.23182, 5: 0.16188},
    },
}


class ScanError(ValueError):
    pass


def criterion_value(criterion: str, family: FamilySpec, x: float, partition: Bipartition | None = None) -> float:
    s = family(x)
    if partition is None and criterion in ("overlap_pos", "rc"):
        partition = Bipartition((0,), tuple(range(1, s.nparties)))
    if criterion == "overlap_pos":
        return max_overlap(s, partition) - Q_TOL
    if criterion == "gte_sum":
        return float(sum(gte_xyz(s))) - BISEPARABLE_BOUND
    if criterion == "gte_bound":
        return gte_bound(s)
    if criterion == "rc":
        return -reduction_criterion(s, partition)[0] - RC_TOL
    raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}")


@dataclass(frozen=True)
class ThresholdScan:
    family: FamilySpec
    criterion: str
    bracket: tuple[float, float] = (0.0, 1.0)
    tol: float = 1e-7
    partition: Bipartition | None = None

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {self.criterion!r}; expected one of {CRITERIA}")
        lo, hi = self.bracket
        if not lo < hi:
            raise ValueError("bracket must satisfy lo < hi")

    def __call__(self, x: float) -> float:
        return criterion_value(self.criterion, self.family, x, self.partition)


def bisect_threshold(scan: ThresholdScan) -> float:
    """Locate the single sign change of ``scan`` on its bracket.

    A 16-point pre-scan must show exactly one change between ``f <= 0`` and
    ``f > 0``; that cell is then bisected down to ``scan.tol``.
    """
    lo, hi = scan.bracket
    grid = np.linspace(lo, hi, PRESCAN_POINTS)
    positive = np.array([scan(x) > 0 for x in grid])
    flips = np.flatnonzero(positive[1:] != positive[:-1])
    if len(flips) == 0:
        raise ScanError(f"{scan.criterion} does not change sign on [{lo}, {hi}]")
    if len(flips) > 1:
        raise ScanError(f"{scan.criterion} changes sign {len(flips)} times on [{lo}, {hi}]; not monotone")
    a, b = grid[flips[0]], grid[flips[0] + 1]

    # bisect needs strictly opposite signs, so zero counts with the negative side
    def f(x):
        return 1.0 if scan(x) > 0 else -1.0

    if f(a) == f(b):
        raise ScanError("criterion sign changed between pre-scan and bisection")
    return float(bisect(f, a, b, xtol=scan.tol, maxiter=200))


@dataclass(frozen=True)
class TableCell:
    table: str
    range: str
    d: int
    value: float
    published: float

    @property
    def deviation(self) -> float:
        return abs(self.value - self.published)


def _table_i(d: int) -> list[tuple[str, float]]:
    fam = FamilySpec("ghz_noise", d, 3)
    return [
        ("Range 1", bisect_threshold(ThresholdScan(fam, "gte_sum"))),
        ("Range 2", bisect_threshold(ThresholdScan(fam, "gte_bound"))),
    ]


def _table_ii(d: int) -> list[tuple[str, float]]:
    fam = FamilySpec("isotropic", d, 2)
    return [
        ("Range 1", bisect_threshold(ThresholdScan(fam, "overlap_pos"))),
        ("Range 2", bisect_threshold(ThresholdScan(fam, "rc"))),
    ]


def _table_iii(d: int) -> list[tuple[str, float]]:
    fam = FamilySpec("ghz_noise", d, 3)
    xs = [bisect_threshold(ThresholdScan(fam, "overlap_pos", partition=p)) for p in TRIPARTITIONS]
    return [("Range", min(xs))]


_BUILDERS = {"I": _table_i, "II": _table_ii, "III": _table_iii}


def reproduce_table(which: str, dims=None) -> list[TableCell]:
    """Recompute the thresholds of table ``I``, ``II`` or ``III``.

    ``dims`` restricts the dimensions computed (default: all published ones).
    """
    which = which.upper()
    if which not in _BUILDERS:
        raise ValueError(f"unknown table {which!r}; expected I, II or III")
    published = PUBLISHED[which]
    all_dims = sorted(next(iter(published.values())))
    cells = []
    for d in dims or all_dims:
        for rng, value in _BUILDERS[which](d):
            cells.append(TableCell(which, rng, d, value, published[rng][d]))
    return cells
