"""Dense complex matrices: validation, unitarity, Haar sampling, sub-matrices.

Matrices are plain ``complex128`` numpy arrays marked read-only after
construction so they can be shared between workers.
"""
from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .rng import RngStream

UNITARY_TOL = 1e-10


def freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(data) -> np.ndarray:
    """Validate ``data`` as a non-empty, finite 2-d complex matrix.

    Returns a read-only ``complex128`` copy.
    """
    a = np.array(data, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return freeze(a)


def identity(dim: int) -> np.ndarray:
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return freeze(np.eye(dim, dtype=np.complex128))


def beamsplitter() -> np.ndarray:
    """The balanced two-mode beamsplitter [[1, 1], [1, -1]] / sqrt(2)."""
    return freeze(np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0))


def unitarity_error(m) -> float:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"unitarity needs a square matrix, got shape {a.shape}")
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))


def check_unitary(m, tol: float = UNITARY_TOL) -> bool:
    """True iff ``max |M^H M - I| <= tol``."""
    return unitarity_error(m) <= tol


def as_unitary(data, tol: float = UNITARY_TOL) -> np.ndarray:
    a = as_matrix(data)
    if not check_unitary(a, tol):
        raise ValueError(f"matrix is not unitary within {tol:g}")
    return a


def haar_unitary(dim: int, rng: RngStream) -> np.ndarray:
    """Draw a Haar-distributed ``dim x dim`` unitary.

    QR of a complex Ginibre matrix, with the phases of R's diagonal moved
    into Q. Without the phase fix the result is unitary but not Haar.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    z = rng.complex_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return freeze(np.ascontiguousarray(q))


def _check_pattern(p: Sequence[int], length: int, name: str) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if len(p) != length:
        raise ValueError(f"{name} has length {len(p)}, expected {length}")
    if any(x < 0 for x in p):
        raise ValueError(f"{name} has negative entries")
    return p


def submatrix(u, k: Sequence[int], l: Sequence[int]) -> np.ndarray:
    """Sub-matrix of ``u`` for input pattern ``k`` and output pattern ``l``.

    Column ``j`` appears ``k[j]`` times and row ``i`` appears ``l[i]`` times,
    both in ascending mode order.
    """
    u = np.asarray(u)
    rows, cols = u.shape
    k = _check_pattern(k, cols, "input pattern")
    l = _check_pattern(l, rows, "output pattern")
    n = sum(k)
    if n < 1 or sum(l) != n:
        raise ValueError(f"photon numbers must match and be >= 1 (got {n} in, {sum(l)} out)")
    ci = np.repeat(np.arange(cols), k)
    ri = np.repeat(np.arange(rows), l)
    return freeze(u[np.ix_(ri, ci)].astype(np.complex128))


def matrix_to_json(m) -> str:
    """Serialize to ``{"dim", "re", "im"}``; floats use their round-trip repr."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix JSON holds square matrices only")
    doc = {"dim": a.shape[0], "re": a.real.tolist(), "im": a.imag.tolist()}
    return json.dumps(doc) + "\n"


def matrix_from_json(text: str) -> np.ndarray:
    doc = json.loads(text)
    try:
        dim = int(doc["dim"])
        re = np.array(doc["re"], dtype=np.float64)
        im = np.array(doc["im"], dtype=np.float64)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(f"matrix JSON arrays do not match dim={dim}")
    return as_matrix(re + 1j * im)


def save_matrix(path, m) -> None:
    with open(path, "w") as fh:
        fh.write(matrix_to_json(m))


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(fh.read())
