"""JSON state files.

::

    {"kind": "pure", "dims": [2, 2], "data": [[0.7071, 0.0], [0, 0], [0, 0], [0.7071, 0.0]]}

``data`` holds ``[re, im]`` pairs: the amplitude vector for ``pure``, the
row-major density matrix for ``mixed``.
"""
from __future__ import annotations

import hashlib
import json
from math import prod
from pathlib import Path

import numpy as np

from .qmat import InvalidStateError, QState


class StateFileError(ValueError):
    pass


def parse_state(doc: dict) -> QState:
    """Build and validate a :class:`QState` from a decoded state document."""
    if not isinstance(doc, dict):
        raise StateFileError("state file must hold a JSON object")
    missing = {"kind", "dims", "data"} - doc.keys()
    if missing:
        raise StateFileError(f"state file is missing field(s): {', '.join(sorted(missing))}")
    kind, dims, data = doc["kind"], doc["dims"], doc["data"]
    if kind not in ("pure", "mixed"):
        raise StateFileError(f"kind must be 'pure' or 'mixed', got {kind!r}")
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and d >= 2 for d in dims):
        raise StateFileError(f"dims must be a nonempty list of integers >= 2, got {dims!r}")
    n = prod(dims)
    expected = n if kind == "pure" else n * n
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise StateFileError("data must be a list of [re, im] number pairs") from None
    if arr.shape != (expected, 2):
        raise StateFileError(f"{kind} state with dims {dims} needs {expected} [re, im] pairs, got array of shape {arr.shape}")
    body = arr[:, 0] + 1j * arr[:, 1]
    s = QState(tuple(dims), body if kind == "pure" else body.reshape(n, n))
    return s.check()


def state_to_doc(s: QState) -> dict:
    flat = s.body.reshape(-1)
    return {
        "kind": "pure" if s.is_pure else "mixed",
        "dims": list(s.dims),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def load_state(path) -> tuple[QState, str]:
    """Read a state file; returns the state and the SHA-256 of the raw bytes."""
    raw = Path(path).read_bytes()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise StateFileError(f"{path}: not a UTF-8 JSON document ({exc})") from None
    return parse_state(doc), hashlib.sha256(raw).hexdigest()


def save_state(s: QState, path) -> None:
    Path(path).write_text(json.dumps(state_to_doc(s)) + "\n", encoding="utf-8")


__all__ = ["InvalidStateError", "StateFileError", "load_state", "parse_state", "save_state", "state_to_doc"]
