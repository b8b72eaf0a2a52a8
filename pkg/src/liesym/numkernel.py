"""Dense complex matrix kernel.

Every other module builds on the handful of routines here: predicates
(Hermitian, unitary, positive semidefinite), a cyclic Jacobi eigensolver for
Hermitian matrices, a scaling-and-squaring matrix exponential, the PSD square
root, and the JSON matrix format shared by all file interfaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import NamedTuple

import numpy as np

DEFAULT_TOL = 1e-10

_JACOBI_MAX_SWEEPS = 64
_EXP_MAX_TERMS = 60


class NotHermitianError(ValueError):
    """Raised when an operation requires a Hermitian input."""


class NotPositiveSemidefiniteError(ValueError):
    """Raised when a matrix has an eigenvalue below ``-tol``."""


class MatrixFormatError(ValueError):
    """Raised for malformed matrix input (non-square, non-finite, bad JSON)."""


class HermitianEigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square, finite complex128 array (a fresh copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise MatrixFormatError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise MatrixFormatError("matrix has non-finite entries")
    return a


def dagger(m) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def commutator(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    return a @ b - b @ a


def max_abs(m) -> float:
    """Max-abs entry norm, 0 for empty input."""
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    return max_abs(m - dagger(m)) <= tol


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    return max_abs(m @ dagger(m) - np.eye(m.shape[0])) <= tol


def is_positive_semidefinite(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff every eigenvalue of the Hermitian matrix ``m`` is >= -tol."""
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise NotHermitianError("positive semidefiniteness is only defined for Hermitian input")
    w = eig_hermitian(m, tol=tol).eigenvalues
    return bool(w[0] >= -tol)


def _hermitian_tol(m: np.ndarray, tol: float) -> float:
    return tol * max(1.0, max_abs(m))


def eig_hermitian(m, tol: float = DEFAULT_TOL) -> HermitianEigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then annihilates the (now real) pivot with a real plane
    rotation. Sweeps run in fixed row-major pivot order, so the result is
    fully deterministic.

    Returns eigenvalues sorted ascending and the matching orthonormal
    eigenvectors as columns.
    """
    a = as_matrix(m)
    if max_abs(a - dagger(a)) > _hermitian_tol(a, tol):
        raise NotHermitianError("eig_hermitian requires a Hermitian matrix")
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return HermitianEigenDecomposition(np.zeros(n), v)

    for _ in range(_JACOBI_MAX_SWEEPS):
        off = math.sqrt(sum(abs(a[p, q]) ** 2 for p in range(n) for q in range(p + 1, n)))
        if off <= 1e-16 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # columns p, q of the unitary: diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = dagger(g) @ a[idx, :]
                v[:, idx] = v[:, idx] @ g
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return HermitianEigenDecomposition(w[order], v[:, order])


def mat_exp(m) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    The matrix is scaled by ``2**-s`` until its infinity norm is at most 1/2,
    the series is summed until the next term no longer changes the sum, and
    the result is squared ``s`` times.
    """
    a = as_matrix(m)
    n = a.shape[0]
    norm = float(np.max(np.sum(np.abs(a), axis=1)))
    s = 0
    if norm > 0.5:
        s = int(math.ceil(math.log2(norm / 0.5)))
    b = a / (2.0 ** s)
    term = np.eye(n, dtype=np.complex128)
    total = term.copy()
    for k in range(1, _EXP_MAX_TERMS):
        term = term @ b / k
        total = total + term
        if max_abs(term) <= 1e-18 * max(1.0, max_abs(total)):
            break
    for _ in range(s):
        total = total @ total
    return total


def psd_sqrt(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian PSD square root ``R`` with ``R @ R == m``."""
    dec = eig_hermitian(m, tol=tol)
    w = dec.eigenvalues
    if w[0] < -tol * max(1.0, float(np.max(np.abs(w)))):
        raise NotPositiveSemidefiniteError(f"smallest eigenvalue {w[0]:.3e} is negative")
    root = np.sqrt(np.clip(w, 0.0, None))
    v = dec.eigenvectors
    r = (v * root) @ dagger(v)
    return 0.5 * (r + dagger(r))


# --- matrix file format ---------------------------------------------------

def matrix_to_json(m) -> dict:
    a = as_matrix(m)
    return {
        "dim": int(a.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MatrixFormatError("matrix object needs an 'entries' field")
    rows = obj["entries"]
    dim = obj.get("dim", len(rows))
    if not isinstance(rows, list) or len(rows) != dim:
        raise MatrixFormatError(f"expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixFormatError(f"row {i} does not have {dim} entries")
        for j, pair in enumerate(row):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise MatrixFormatError(f"entry ({i},{j}) is not a [re, im] pair")
            re, im = float(pair[0]), float(pair[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise MatrixFormatError(f"entry ({i},{j}) is not finite")
            out[i, j] = complex(re, im)
    return as_matrix(out)


def save_matrix(m, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(m)))


def load_matrix(path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc
    return matrix_from_json(obj)
