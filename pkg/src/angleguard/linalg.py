"""Dense Hermitian linear algebra: eigendecomposition, positive square roots,
positivity and Loewner-order predicates.

Matrices are plain ``numpy`` arrays. ``hermitian`` validates and symmetrizes
input; every other function here is pure and leaves its arguments untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NotPositiveError


@dataclass(frozen=True)
class ToleranceConfig:
    """Absolute/relative tolerances used throughout the library.

    ``psd_slack`` is the negative eigenvalue mass, relative to the matrix
    norm, that is still treated as roundoff when testing positivity.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    psd_slack: float = 1e-9

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "psd_slack"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value >= 0):
                raise InputError(f"{name} must be a finite nonnegative number, got {value!r}")

    @classmethod
    def uniform(cls, tol: float) -> "ToleranceConfig":
        return cls(abs_tol=tol, rel_tol=tol, psd_slack=tol)

    def to_dict(self) -> dict:
        return {"abs_tol": self.abs_tol, "rel_tol": self.rel_tol, "psd_slack": self.psd_slack}


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order with a unitary basis of eigenvectors (columns)."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.eigenvalues) @ self.basis.conj().T


def as_matrix(a, *, dtype=complex) -> np.ndarray:
    """Coerce to a finite 2-D array; scalars and vectors are rejected."""
    arr = np.array(a, dtype=dtype)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"expected a nonempty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix has non-finite entries")
    return arr


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def fro_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def hermitian(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate that ``a`` is Hermitian within tolerance and return (A + A*)/2."""
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"Hermitian matrix must be square, got {arr.shape}")
    scale = float(np.max(np.abs(arr)))
    skew = float(np.max(np.abs(arr - adjoint(arr))))
    if skew > tol.abs_tol + tol.rel_tol * scale:
        raise InputError(f"matrix is not Hermitian (max |A - A*| = {skew:.3e})")
    return (arr + adjoint(arr)) / 2


def _canonical_phase(vectors: np.ndarray) -> np.ndarray:
    # Rotate each column so its largest-modulus entry is real positive; makes
    # the returned basis deterministic.
    idx = np.argmax(np.round(np.abs(vectors), 12), axis=0)
    pivots = vectors[idx, np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivots) / pivots)


def herm_eigendecomp(h, tol: ToleranceConfig = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    mat = hermitian(h, tol)
    if not np.any(mat.imag):
        mat = mat.real
    values, vectors = np.linalg.eigh(mat)
    order = np.argsort(values)[::-1]
    basis = _canonical_phase(vectors[:, order].astype(complex))
    return EigenDecomposition(eigenvalues=values[order].copy(), basis=basis)


def eigvalsh(h) -> np.ndarray:
    """Ascending eigenvalues of an already-Hermitian array; no validation."""
    return np.linalg.eigvalsh(h)


def psd_sqrt(h, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Positive square root of a positive semidefinite matrix.

    Eigenvalues in ``[-psd_slack * ||H||_F, 0)`` are clamped to zero; anything
    more negative raises :class:`NotPositiveError`.
    """
    dec = herm_eigendecomp(h, tol)
    norm = fro_norm(dec.eigenvalues)
    lam_min = float(dec.eigenvalues[-1])
    if lam_min < -tol.psd_slack * norm:
        raise NotPositiveError(f"matrix is not positive: min eigenvalue {lam_min:.3e}")
    roots = np.sqrt(np.clip(dec.eigenvalues, 0.0, None))
    s = (dec.basis * roots) @ adjoint(dec.basis)
    return (s + adjoint(s)) / 2


def is_positive(h, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    mat = hermitian(h, tol)
    lam_min = float(eigvalsh(mat)[0])
    return lam_min >= -tol.psd_slack * max(1.0, fro_norm(mat))


def loewner_leq(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff ``b - a`` is positive semidefinite."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise InputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return is_positive(b - a, tol)


def loewner_gap(a: np.ndarray, b: np.ndarray) -> float:
    """Smallest eigenvalue of ``b - a``; negative means ``a <= b`` fails."""
    d = b - a
    return float(eigvalsh((d + adjoint(d)) / 2)[0])


def op_norm(a) -> float:
    """Operator (spectral) norm."""
    return float(np.linalg.norm(np.asarray(a), 2))


def matrix_to_json(a) -> dict:
    arr = np.atleast_2d(np.asarray(a, dtype=complex))
    if arr.ndim != 2:
        raise InputError(f"expected a 2-D matrix, got shape {arr.shape}")
    flat = arr.reshape(-1)
    return {
        "rows": int(arr.shape[0]),
        "cols": int(arr.shape[1]),
        "re": [float(v) for v in flat.real],
        "im": [float(v) for v in flat.imag],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * (rows * cols)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad matrix object: {exc}") from exc
    if rows < 1 or cols < 1 or re.size != rows * cols or im.size != rows * cols:
        raise InputError("matrix object entry count does not match rows x cols")
    return as_matrix((re + 1j * im).reshape(rows, cols))
