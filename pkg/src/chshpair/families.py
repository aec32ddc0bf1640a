"""State factories: maximally entangled states, noisy mixtures and fixtures."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import QState

FAMILY_NAMES = ("max_entangled", "isotropic", "ghz_noise", "ghz", "w", "bell", "product")


def _check_x(x: float):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {x}")


def max_entangled(d: int, parties: int = 2) -> QState:
    """``(1/sqrt(d)) sum_i |i>^(x parties)``."""
    if d < 2 or parties < 2:
        raise ValueError("need d >= 2 and at least two parties")
    n = d**parties
    psi = np.zeros(n, dtype=np.complex128)
    # |ii...i> sits at i * (1 + d + ... + d^(parties-1))
    step = (n - 1) // (d - 1)
    psi[np.arange(d) * step] = 1.0 / np.sqrt(d)
    return QState.pure(psi, (d,) * parties)


def _noisy(d: int, parties: int, x: float) -> QState:
    _check_x(x)
    psi = max_entangled(d, parties).body
    n = d**parties
    rho = x * np.outer(psi, psi.conj()) + (1.0 - x) / n * np.eye(n)
    return QState.mixed(rho, (d,) * parties)


def isotropic(d: int, x: float) -> QState:
    """``x |Phi_d><Phi_d| + (1 - x) I / d^2``."""
    return _noisy(d, 2, x)


def ghz_noise(d: int, x: float) -> QState:
    """``x |GHZ_d><GHZ_d| + (1 - x) I / d^3``.

    The noise is normalized by the full dimension ``d^3`` so the trace is one.
    """
    return _noisy(d, 3, x)


def named_state(name: str) -> QState:
    """Qubit fixtures: ``ghz``, ``w``, ``bell`` or ``product`` (``|000>``)."""
    if name == "ghz":
        return max_entangled(2, 3)
    if name == "bell":
        return max_entangled(2, 2)
    if name == "w":
        psi = np.zeros(8, dtype=np.complex128)
        psi[[4, 2, 1]] = 1.0 / np.sqrt(3.0)
        return QState.pure(psi, (2, 2, 2))
    if name == "product":
        psi = np.zeros(8, dtype=np.complex128)
        psi[0] = 1.0
        return QState.pure(psi, (2, 2, 2))
    raise ValueError(f"unknown named state {name!r}; expected one of ghz, w, bell, product")


@dataclass(frozen=True)
class FamilySpec:
    """A state family with its fixed parameters; call with ``x`` to build a member."""

    name: str
    d: int = 2
    parties: int = 2

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}")

    def __call__(self, x: float | None = None) -> QState:
        if self.name == "isotropic":
            return isotropic(self.d, x)
        if self.name == "ghz_noise":
            return ghz_noise(self.d, x)
        if self.name == "max_entangled":
            return max_entangled(self.d, self.parties)
        return named_state(self.name)
