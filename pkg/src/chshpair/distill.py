"""Bipartite distillability from CHSH overlaps and the reduction criterion.

A positive pair overlap of ``rho^(x n)`` across a bipartition exhibits an
entangled 2x2 compression, which certifies distillability across it. The
overlap is not invariant under local unitaries, so a seeded search over
product unitaries can raise it from zero.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import expm
from scipy.stats import unitary_group

from .pairs import Bipartition, flatten, pair_table
from .qmat import QState, hermitian_eigs, kron, partial_trace

Q_TOL = 1e-9
RC_TOL = 1e-10
DIM_CAP = 4096

# one Haar restart per this many iterations; the rest perturb the incumbent
RESTART_EVERY = 5


class DimensionCapError(ValueError):
    pass


@dataclass(frozen=True)
class DistillReport:
    partition: Bipartition
    copies: int
    max_q: float
    distillable_chsh: bool
    rc_min_eig: float | None = None
    distillable_rc: bool | None = None
    lu_max_q: float | None = None
    lu_trace: tuple[float, ...] | None = None
    seed: int | None = None


def n_copy(s: QState, p: Bipartition, n: int, cap: int = DIM_CAP) -> tuple[QState, Bipartition]:
    """``rho^(x n)`` with party ``k`` of copy ``c`` at index ``c * N + k``.

    The returned bipartition puts the left parties of every copy on the left.
    """
    if n < 1:
        raise ValueError("copies must be >= 1")
    total = s.dim**n
    if total > cap:
        raise DimensionCapError(f"{n}-copy state has dimension {total}, above the cap of {cap}")
    if n == 1:
        return s, p
    big = QState(s.dims * n, kron(*([s.body] * n)))
    N = s.nparties
    left = tuple(c * N + k for c in range(n) for k in p.left)
    right = tuple(c * N + k for c in range(n) for k in p.right)
    return big, Bipartition(left, right)


def max_overlap(s: QState, p: Bipartition) -> float:
    return pair_table(s, p).max_q


def distillable_chsh(s: QState, p: Bipartition, n: int = 1, cap: int = DIM_CAP, tol: float = Q_TOL) -> DistillReport:
    big, bp = n_copy(s, p, n, cap)
    q = max_overlap(big, bp)
    return DistillReport(p, n, q, q > tol)


def reduction_criterion(s: QState, p: Bipartition, tol: float = RC_TOL) -> tuple[float, bool]:
    """Smallest eigenvalue of ``rho_L (x) I - rho`` and whether it signals distillability."""
    flat = flatten(s, p).as_mixed()
    dl, dr = flat.dims
    rho_l = partial_trace(flat, [0])
    w = hermitian_eigs(kron(rho_l, np.eye(dr)) - flat.body)
    m = float(w[0])
    return m, m < -tol


def _apply_local(rho: np.ndarray, unitaries) -> np.ndarray:
    u = kron(*unitaries)
    return u @ rho @ u.conj().T


def _perturb(u: np.ndarray, step: float, rng: np.random.Generator) -> np.ndarray:
    d = u.shape[0]
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = (g + g.conj().T) / 2.0
    return expm(1j * step * h) @ u


def _haar(d: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(d, random_state=rng)


def lu_enhanced_overlap(
    s: QState,
    p: Bipartition,
    iterations: int = 200,
    seed: int = 0,
    n: int = 1,
    cap: int = DIM_CAP,
    tol: float = Q_TOL,
) -> DistillReport:
    """Search product unitaries ``U_1 (x) ... (x) U_N`` maximizing the largest overlap.

    The incumbent starts at the identity. Every ``RESTART_EVERY``-th
    iteration proposes fresh Haar-random unitaries; the others perturb the
    incumbent by ``exp(i eps H)`` with ``H`` Gaussian Hermitian and an
    adaptive step ``eps``. Improvements are accepted greedily. Iteration ``k``
    draws from its own generator seeded by ``(seed, k)``, so the trace is
    reproducible for a fixed seed.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    big, bp = n_copy(s, p, n, cap)
    rho = big.density()
    dims = big.dims

    def score(us):
        return max_overlap(QState(dims, _apply_local(rho, us)), bp)

    best_us = [np.eye(d, dtype=np.complex128) for d in dims]
    best = plain = score(best_us)
    step = 0.3
    trace = []
    for k in range(iterations):
        rng = np.random.default_rng([seed, k])
        if k % RESTART_EVERY == 0:
            cand = [_haar(d, rng) for d in dims]
        else:
            cand = [_perturb(u, step, rng) for u in best_us]
        val = score(cand)
        if val > best:
            best, best_us = val, cand
            if k % RESTART_EVERY:
                step = min(step * 1.5, 1.0)
        elif k % RESTART_EVERY:
            step = max(step * 0.8, 1e-4)
        trace.append(best)
    return DistillReport(p, n, plain, max(best, plain) > tol, lu_max_q=best, lu_trace=tuple(trace), seed=seed)


def distill_report(
    s: QState,
    p: Bipartition,
    n: int = 1,
    lu_iterations: int = 0,
    seed: int = 0,
    cap: int = DIM_CAP,
    q_tol: float = Q_TOL,
    rc_tol: float = RC_TOL,
) -> DistillReport:
    """CHSH verdict (LU-enhanced when ``lu_iterations > 0``) plus the reduction criterion."""
    if lu_iterations > 0:
        rep = lu_enhanced_overlap(s, p, lu_iterations, seed, n, cap, q_tol)
    else:
        rep = distillable_chsh(s, p, n, cap, q_tol)
    m, violated = reduction_criterion(s, p, rc_tol)
    return replace(rep, rc_min_eig=m, distillable_rc=violated)
