"""Dense complex linear algebra for multipartite states.

States are stored as plain numpy arrays wrapped in :class:`QState`, which
carries the list of local dimensions. Indexing is 0-based and row-major
(C order): the first party is the most significant digit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


class InvalidStateError(ValueError):
    """Raised when a state violates a structural or physical invariant.

    ``report`` holds the list of :class:`Violation` entries that triggered it.
    """

    def __init__(self, report):
        self.report = list(report)
        lines = "; ".join(f"{v.check}: {v.deviation:.3e}" for v in self.report)
        super().__init__(f"invalid quantum state ({lines})")


@dataclass(frozen=True)
class Violation:
    check: str
    deviation: float
    detail: str = ""


@dataclass(frozen=True, eq=False)
class QState:
    """Pure amplitude vector or density matrix on a tensor-product space.

    Parameters
    ----------
    dims : tuple of int
        Local dimension of each party.
    body : np.ndarray
        Either a vector of length ``prod(dims)`` (pure) or a square matrix of
        that size (mixed).
    """

    dims: tuple[int, ...]
    body: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        body = np.array(self.body, dtype=np.complex128)
        body.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "body", body)
        n = prod(dims) if dims else 0
        if body.ndim == 1:
            ok = body.shape == (n,)
        elif body.ndim == 2:
            ok = body.shape == (n, n)
        else:
            ok = False
        if not ok:
            raise ValueError(f"body of shape {body.shape} does not match dims {dims}")

    @classmethod
    def pure(cls, amplitudes, dims) -> "QState":
        return cls(tuple(dims), np.asarray(amplitudes).reshape(-1))

    @classmethod
    def mixed(cls, rho, dims) -> "QState":
        return cls(tuple(dims), np.asarray(rho))

    @property
    def is_pure(self) -> bool:
        return self.body.ndim == 1

    @property
    def dim(self) -> int:
        return prod(self.dims)

    @property
    def nparties(self) -> int:
        return len(self.dims)

    def density(self) -> np.ndarray:
        """Density matrix; the outer product for pure states."""
        if self.is_pure:
            return np.outer(self.body, self.body.conj())
        return np.array(self.body)

    def as_mixed(self) -> "QState":
        return self if not self.is_pure else QState(self.dims, self.density())

    def check(self) -> "QState":
        """Return ``self`` if valid, else raise :class:`InvalidStateError`."""
        report = validate(self)
        if report:
            raise InvalidStateError(report)
        return self


def kron(*mats) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors), left to right."""
    out = np.asarray(mats[0], dtype=np.complex128)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=np.complex128))
    return out


def partial_trace(s: QState, keep) -> np.ndarray:
    """Reduced density matrix on the parties listed in ``keep`` (0-based).

    The kept parties appear in ascending order in the result.
    """
    keep = sorted(set(int(k) for k in keep))
    n = s.nparties
    if not keep or len(keep) >= n:
        raise ValueError("keep must be a nonempty strict subset of the parties")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"party index out of range for {n} parties")
    traced = [k for k in range(n) if k not in keep]
    dk = prod(s.dims[k] for k in keep)
    if s.is_pure:
        psi = s.body.reshape(s.dims).transpose(keep + traced).reshape(dk, -1)
        return psi @ psi.conj().T
    rho = s.body.reshape(s.dims + s.dims)
    # contract each traced party's row and column index
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:n])
    cols = list(letters[n:2 * n])
    for k in traced:
        cols[k] = rows[k]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    red = np.einsum("".join(rows) + "".join(cols) + "->" + out, rho)
    return red.reshape(dk, dk)


def is_hermitian(m, tol=HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.abs(m - m.conj().T).max(initial=0) <= tol


def hermitian_eigs(m, vectors: bool = False, tol: float = 1e-8):
    """Ascending eigenvalues of a Hermitian matrix.

    With ``vectors=True`` returns ``(w, v)`` such that ``v @ diag(w) @ v^H == m``.
    """
    m = np.asarray(m, dtype=np.complex128)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian")
    m = 0.5 * (m + m.conj().T)
    if vectors:
        return np.linalg.eigh(m)
    return np.linalg.eigvalsh(m)


def validate(s: QState) -> list[Violation]:
    """List every violated state invariant with its measured deviation.

    An empty list means the state is valid.
    """
    report = []
    bad_dims = [d for d in s.dims if d < 2]
    if not s.dims or bad_dims:
        report.append(Violation("dims", float(len(bad_dims) or 1), f"local dimensions must be >= 2, got {list(s.dims)}"))
    body = s.body
    if not np.all(np.isfinite(body)):
        report.append(Violation("finite", float(np.count_nonzero(~np.isfinite(body))), "non-finite entries"))
        return report
    if s.is_pure:
        dev = abs(float(np.linalg.norm(body)) - 1.0)
        if dev > NORM_TOL:
            report.append(Violation("norm", dev))
        return report
    herm = float(np.abs(body - body.conj().T).max(initial=0))
    if herm > HERMITIAN_TOL:
        report.append(Violation("hermitian", herm))
    tr = abs(complex(np.trace(body)) - 1.0)
    if tr > TRACE_TOL:
        report.append(Violation("trace", tr))
    w = np.linalg.eigvalsh(0.5 * (body + body.conj().T))
    if w.size and w[0] < -PSD_TOL:
        report.append(Violation("positivity", float(-w[0]), "negative eigenvalue"))
    return report


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.vdot(rho, rho)))
