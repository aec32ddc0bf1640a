"""SO(d) generators and observables embedded on their two-dimensional support.

A generator ``L`` for the index pair ``(s, t)`` is ``|s><t| - |t><s|``. Its
support ``span{|s>, |t>}`` selects the qubit inside a qudit that all pair
computations work on. Indices here are 0-based; :class:`GeneratorIndex` also
exposes the 1-based labels used when printing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)


@dataclass(frozen=True, order=True)
class GeneratorIndex:
    """Ordered basis pair ``s < t`` (0-based) in dimension ``d``."""

    s: int
    t: int
    d: int = field(compare=False)

    def __post_init__(self):
        if not 0 <= self.s < self.t < self.d:
            raise ValueError(f"need 0 <= s < t < d, got s={self.s}, t={self.t}, d={self.d}")

    @property
    def label(self) -> str:
        return f"({self.s + 1},{self.t + 1})"

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.d, self.d), dtype=np.complex128)
        m[self.s, self.t] = 1.0
        m[self.t, self.s] = -1.0
        return m


def generator_indices(d: int) -> list[GeneratorIndex]:
    """All ``d(d-1)/2`` generator indices in lexicographic ``(s, t)`` order."""
    if d < 2:
        raise ValueError(f"SO(d) generators need d >= 2, got {d}")
    return [GeneratorIndex(s, t, d) for s, t in combinations(range(d), 2)]


def index_pairs(d: int) -> np.ndarray:
    """``(d(d-1)/2, 2)`` integer array of the same ``(s, t)`` pairs."""
    if d < 2:
        raise ValueError(f"SO(d) generators need d >= 2, got {d}")
    return np.array(list(combinations(range(d), 2)), dtype=np.intp).reshape(-1, 2)


def so_generators(d: int) -> list[np.ndarray]:
    return [g.matrix() for g in generator_indices(d)]


def subspace_projector(g: GeneratorIndex) -> np.ndarray:
    """``L^dag L``, the rank-2 projector onto ``span{|s>, |t>}``."""
    p = np.zeros((g.d, g.d), dtype=np.complex128)
    p[g.s, g.s] = p[g.t, g.t] = 1.0
    return p


@dataclass(frozen=True, eq=False)
class EmbeddedObservable:
    base: GeneratorIndex
    bloch: np.ndarray
    matrix: np.ndarray


def embed_observable(g: GeneratorIndex, bloch, tol: float = 1e-10) -> EmbeddedObservable:
    """Place ``bloch . sigma`` on the ``{s, t}`` rows and columns of a ``d x d`` zero matrix."""
    bloch = np.asarray(bloch, dtype=float).reshape(3)
    if abs(np.linalg.norm(bloch) - 1.0) > tol:
        raise ValueError(f"measurement direction must be a unit vector, |b| = {np.linalg.norm(bloch)}")
    block = np.tensordot(bloch, PAULI, axes=1)
    m = np.zeros((g.d, g.d), dtype=np.complex128)
    idx = [g.s, g.t]
    m[np.ix_(idx, idx)] = block
    bloch.setflags(write=False)
    m.setflags(write=False)
    return EmbeddedObservable(g, bloch, m)
