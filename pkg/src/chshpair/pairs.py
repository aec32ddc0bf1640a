"""Projection of a multipartite state onto qubit pairs across a bipartition.

For a bipartition ``L|R`` the state is viewed as a ``dimL x dimR`` bipartite
state. Every pair of generator indices ``(alpha, beta)`` selects a 2x2
subspace ``span{|s>,|t>} (x) span{|u>,|v>}``; the state's population there is
the weight ``y`` and the renormalized compression is a two-qubit state whose
CHSH overlap ``q`` is recorded.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import prod

import numpy as np

from .chsh import horodecki_gammas
from .qmat import QState
from .sogen import GeneratorIndex, generator_indices, index_pairs

Y_FLOOR = 1e-12


@dataclass(frozen=True)
class Bipartition:
    """Split of party indices (0-based) into ``left | right``.

    Orientation is kept as given: ``left`` indexes rows after :func:`flatten`.
    Use :attr:`canonical` to compare splits irrespective of orientation.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left = tuple(sorted(self.left))
        right = tuple(sorted(self.right))
        if not left or not right:
            raise ValueError("both sides of a bipartition must be nonempty")
        if set(left) & set(right):
            raise ValueError(f"parties {sorted(set(left) & set(right))} appear on both sides")
        if min(left + right) < 0:
            raise ValueError("party indices must be nonnegative")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def nparties(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def canonical(self) -> "Bipartition":
        """Same split with the smallest party index on the left."""
        if min(self.right) < min(self.left):
            return Bipartition(self.right, self.left)
        return self

    @property
    def label(self) -> str:
        sep = "" if self.nparties < 10 else ","
        return sep.join(str(i + 1) for i in self.left) + "|" + sep.join(str(i + 1) for i in self.right)

    def dims(self, dims) -> tuple[int, int]:
        return prod(dims[i] for i in self.left), prod(dims[i] for i in self.right)

    @classmethod
    def parse(cls, spec: str, nparties: int | None = None) -> "Bipartition":
        """Parse ``"1|23"`` or ``"1,2|3"`` (1-based labels)."""
        try:
            lhs, rhs = spec.split("|")
        except ValueError:
            raise ValueError(f"partition must look like '1|23', got {spec!r}") from None

        def side(text):
            text = text.strip()
            parts = text.split(",") if "," in text else list(text)
            return tuple(int(c) - 1 for c in parts if c.strip())

        p = cls(side(lhs), side(rhs))
        if nparties is not None and sorted(p.left + p.right) != list(range(nparties)):
            raise ValueError(f"partition {spec!r} does not cover parties 1..{nparties}")
        return p


def bipartitions(nparties: int) -> list[Bipartition]:
    """All ``2^(n-1) - 1`` unordered bipartitions, smaller side on the left.

    For three parties the order is ``1|23, 2|13, 3|12``.
    """
    if nparties < 2:
        raise ValueError("need at least two parties")
    parties = range(nparties)
    out = []
    for k in range(1, nparties // 2 + 1):
        for left in combinations(parties, k):
            # equal-size splits appear twice; keep the one holding party 0 on the left
            if 2 * k == nparties and 0 not in left:
                continue
            out.append(Bipartition(left, tuple(i for i in parties if i not in left)))
    return out


def flatten(s: QState, p: Bipartition) -> QState:
    """Regroup parties so the state is bipartite with dims ``(dimL, dimR)``."""
    if sorted(p.left + p.right) != list(range(s.nparties)):
        raise ValueError(f"partition {p.label} does not match a {s.nparties}-party state")
    perm = list(p.left + p.right)
    dl, dr = p.dims(s.dims)
    n = s.nparties
    if s.is_pure:
        body = s.body.reshape(s.dims).transpose(perm).reshape(dl * dr)
    else:
        body = s.body.reshape(s.dims + s.dims).transpose(perm + [k + n for k in perm]).reshape(dl * dr, dl * dr)
    return QState((dl, dr), body)


@dataclass(frozen=True, eq=False)
class PairProjection:
    partition: Bipartition
    alpha: GeneratorIndex
    beta: GeneratorIndex
    y: float
    rho2q: np.ndarray | None
    gamma: float
    q: float


@dataclass(frozen=True, eq=False)
class PairTable:
    """Every pair projection of one bipartition, as ``(n_alpha, n_beta)`` arrays."""

    partition: Bipartition
    alphas: list[GeneratorIndex]
    betas: list[GeneratorIndex]
    y: np.ndarray
    blocks: np.ndarray
    gamma: np.ndarray
    q: np.ndarray

    @cached_property
    def weighted_sum(self) -> float:
        """``sum over (alpha, beta) of y^2 q``."""
        return float(np.sum(self.y**2 * self.q))

    @property
    def max_q(self) -> float:
        return float(self.q.max(initial=0.0))

    def records(self) -> list[PairProjection]:
        out = []
        for i, a in enumerate(self.alphas):
            for j, b in enumerate(self.betas):
                present = self.y[i, j] > Y_FLOOR
                block = np.array(self.blocks[i, j]) if present else None
                out.append(PairProjection(self.partition, a, b, float(self.y[i, j]), block,
                                          float(self.gamma[i, j]), float(self.q[i, j])))
        return out


def _block_indices(dl: int, dr: int, a_pairs: np.ndarray, b_pairs: np.ndarray) -> np.ndarray:
    # flat indices of |s u>, |s v>, |t u>, |t v> for every (alpha, beta)
    rows = a_pairs[:, None, :, None] * dr + b_pairs[None, :, None, :]
    return rows.reshape(len(a_pairs), len(b_pairs), 4)


def compress_bipartite(rho: np.ndarray, dl: int, dr: int, a_pairs=None, b_pairs=None):
    """Weights and normalized 4x4 compressions of a ``dl*dr`` density matrix.

    Returns ``(y, blocks)``; blocks with ``y <= Y_FLOOR`` are zero.
    """
    a_pairs = index_pairs(dl) if a_pairs is None else np.asarray(a_pairs, dtype=np.intp).reshape(-1, 2)
    b_pairs = index_pairs(dr) if b_pairs is None else np.asarray(b_pairs, dtype=np.intp).reshape(-1, 2)
    idx = _block_indices(dl, dr, a_pairs, b_pairs)
    raw = rho[idx[..., :, None], idx[..., None, :]]
    y = np.real(np.trace(raw, axis1=-2, axis2=-1))
    present = y > Y_FLOOR
    blocks = np.zeros_like(raw)
    blocks[present] = raw[present] / y[present, None, None]
    return y, blocks


def pair_table(s: QState, p: Bipartition) -> PairTable:
    flat = flatten(s, p)
    dl, dr = flat.dims
    y, blocks = compress_bipartite(flat.density(), dl, dr)
    present = y > Y_FLOOR
    gamma = np.zeros(y.shape)
    q = np.zeros(y.shape)
    if present.any():
        g, qq = horodecki_gammas(blocks[present])
        gamma[present] = g
        q[present] = qq
    return PairTable(p, generator_indices(dl), generator_indices(dr), y, blocks, gamma, q)


def _single(s: QState, p: Bipartition, alpha: GeneratorIndex, beta: GeneratorIndex):
    flat = flatten(s, p)
    dl, dr = flat.dims
    if alpha.d != dl or beta.d != dr:
        raise ValueError(f"generators act on dims ({alpha.d}, {beta.d}) but the partition has ({dl}, {dr})")
    y, blocks = compress_bipartite(flat.density(), dl, dr, [alpha.s, alpha.t], [beta.s, beta.t])
    return float(y[0, 0]), blocks[0, 0]


def pair_weight(s: QState, p: Bipartition, alpha: GeneratorIndex, beta: GeneratorIndex) -> float:
    return _single(s, p, alpha, beta)[0]


def pair_state(s: QState, p: Bipartition, alpha: GeneratorIndex, beta: GeneratorIndex) -> np.ndarray | None:
    """Normalized two-qubit compression, or ``None`` when the weight is negligible."""
    y, block = _single(s, p, alpha, beta)
    return block if y > Y_FLOOR else None


def pair_overlap(s: QState, p: Bipartition, alpha: GeneratorIndex, beta: GeneratorIndex) -> PairProjection:
    y, block = _single(s, p, alpha, beta)
    if y <= Y_FLOOR:
        return PairProjection(p, alpha, beta, y, None, 0.0, 0.0)
    g, q = horodecki_gammas(block)
    return PairProjection(p, alpha, beta, y, block, float(g), float(q))


def all_pair_overlaps(s: QState, p: Bipartition) -> list[PairProjection]:
    return pair_table(s, p).records()
