"""Two-qubit CHSH machinery.

The maximal CHSH value of a two-qubit state is ``2 sqrt(tau1 + tau2)`` where
``tau1 >= tau2`` are the two largest eigenvalues of ``X^T X`` and ``X`` is the
Pauli correlation matrix. The overlap ``q = max(gamma^2 - 4, 0)`` measures how
far the state exceeds the local bound.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .sogen import PAULI

# _PAULI_PAIRS[k, l] = sigma_k (x) sigma_l
_PAULI_PAIRS = np.einsum("kab,lcd->klacbd", PAULI, PAULI).reshape(3, 3, 4, 4)

IMAG_TOL = 1e-10


@dataclass(frozen=True)
class ChshResult:
    gamma: float
    q: float


def _as_two_qubit(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[-2:] != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit density matrix, got shape {rho.shape}")
    return rho


def correlation_matrices(rhos) -> np.ndarray:
    """Batched correlation matrices ``x_kl = Tr(rho sigma_k (x) sigma_l)``.

    ``rhos`` has shape ``(..., 4, 4)``; the result has shape ``(..., 3, 3)``.
    """
    rhos = _as_two_qubit(rhos)
    x = np.einsum("...ij,klji->...kl", rhos, _PAULI_PAIRS)
    if x.size and np.abs(x.imag).max() > IMAG_TOL * max(1.0, np.abs(rhos).max()):
        raise ValueError("correlation matrix has a non-negligible imaginary part; input is not Hermitian")
    return x.real


def correlation_matrix(rho) -> np.ndarray:
    return correlation_matrices(rho)


def overlaps_from_correlations(x) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(gamma, q)`` arrays for a stack of correlation matrices."""
    x = np.asarray(x, dtype=float)
    xtx = np.swapaxes(x, -1, -2) @ x
    tau = np.linalg.eigvalsh(xtx)
    s = np.clip(tau[..., 1] + tau[..., 2], 0.0, None)
    gamma = 2.0 * np.sqrt(s)
    # gamma^2 - 4 written without the square root round trip
    q = np.maximum(4.0 * s - 4.0, 0.0)
    return gamma, q


def horodecki_gammas(rhos) -> tuple[np.ndarray, np.ndarray]:
    return overlaps_from_correlations(correlation_matrices(rhos))


def horodecki_gamma(rho) -> ChshResult:
    """Closed-form maximal CHSH value and overlap for one two-qubit state."""
    rho = _as_two_qubit(rho)
    if rho.ndim != 2:
        raise ValueError("horodecki_gamma takes a single 4x4 matrix; use horodecki_gammas for stacks")
    gamma, q = horodecki_gammas(rho)
    return ChshResult(float(gamma), float(q))


def _directions(theta, phi) -> np.ndarray:
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _chsh_value(x, b1, b2) -> float:
    # optimal a_1, a_2 align with X b_+ and X b_-
    return float(np.linalg.norm(x @ (b1 + b2)) + np.linalg.norm(x @ (b1 - b2)))


def bell_oracle_gamma(rho, resolution: int = 96) -> float:
    """Maximal CHSH value found by direct search over Bob's settings.

    Alice's optimal settings are solved in closed form, which leaves
    ``|X b+| + |X b-|`` with ``b+- = b1 +- b2``. That function is scanned on a
    hemisphere grid (``resolution // 4`` polar by ``resolution`` azimuthal
    points per direction) and the best grid point is polished with
    Nelder-Mead. Independent of the eigenvalue formula; used for
    cross-checking only.
    """
    if resolution < 24:
        raise ValueError("resolution must be at least 24")
    x = correlation_matrix(rho)
    if np.abs(x).max() == 0.0:
        return 0.0
    # b -> -b leaves the objective unchanged, so one hemisphere per setting suffices
    n_pol, n_az = resolution // 4, resolution
    theta = (np.arange(n_pol) + 0.5) * (0.5 * np.pi / n_pol)
    phi = np.arange(n_az) * (2.0 * np.pi / n_az)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    dirs = _directions(tt.ravel(), pp.ravel())
    xb = dirs @ x.T
    sq = np.einsum("ij,ij->i", xb, xb)
    gram = xb @ xb.T
    base = sq[:, None] + sq[None, :]
    vals = np.sqrt(np.clip(base + 2 * gram, 0, None)) + np.sqrt(np.clip(base - 2 * gram, 0, None))
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    best = float(vals[i, j])

    def neg(params):
        b1 = _directions(params[0], params[1])
        b2 = _directions(params[2], params[3])
        return -_chsh_value(x, b1, b2)

    start = np.array([tt.ravel()[i], pp.ravel()[i], tt.ravel()[j], pp.ravel()[j]])
    res = minimize(neg, start, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000})
    return max(best, -float(res.fun))
