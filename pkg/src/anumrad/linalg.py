"""Dense complex-matrix primitives with an explicit tolerance policy.

Everything downstream (seminorms, adjoints, radius scans) is built on the
three operations here: a checked Hermitian eigendecomposition, the spectral
norm, and validation helpers. All decisions about "is this zero" are made
relative to the largest eigenvalue through :class:`TolerancePolicy`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LinAlgInputError(ValueError):
    """Raised when a matrix or vector argument violates a precondition."""


class NotHermitianError(LinAlgInputError):
    """Raised when a matrix expected to be Hermitian is materially not."""


class NotPsdError(LinAlgInputError):
    """Raised when a Hermitian matrix has a materially negative eigenvalue."""


class DimensionMismatchError(LinAlgInputError):
    """Raised when operand dimensions are incompatible."""


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative tolerances shared across the toolkit.

    rank_rel_tol: eigenvalue cutoff, relative to the largest eigenvalue,
        below which a spectral component counts as zero.
    check_rel_tol: tolerance for residual and inequality verdicts.
    equality_rel_tol: looser tolerance for declaring an inequality tight;
        equality cases pass through eigendecompositions twice.
    """

    rank_rel_tol: float = 1e-10
    check_rel_tol: float = 1e-8
    equality_rel_tol: float = 1e-6

    def __post_init__(self):
        for name in ("rank_rel_tol", "check_rel_tol", "equality_rel_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value!r}")


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-d complex128 array, rejecting non-finite entries."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise LinAlgInputError(f"expected a nonempty 2-d matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise LinAlgInputError("matrix contains non-finite entries")
    return arr


def as_square_matrix(m, dim: int | None = None) -> np.ndarray:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {arr.shape[0]}")
    return arr


def as_vector(x, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1:
        raise LinAlgInputError(f"expected a 1-d vector, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise LinAlgInputError("vector contains non-finite entries")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(f"expected length {dim}, got {arr.shape[0]}")
    return arr


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition M = U diag(w) U* with eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m, asym_rel_tol: float = 1e-8) -> HermEig:
    """Eigendecomposition of a (nearly) Hermitian matrix.

    The input is symmetrized as (M + M*)/2 before decomposition; an
    asymmetry exceeding ``asym_rel_tol`` relative to max|M| is an error.
    """
    arr = as_square_matrix(m)
    scale = float(np.abs(arr).max())
    asym = float(np.abs(arr - arr.conj().T).max())
    if scale > 0.0 and asym > asym_rel_tol * scale:
        raise NotHermitianError(
            f"matrix is materially non-Hermitian (asymmetry {asym:.3e}, scale {scale:.3e})"
        )
    sym = (arr + arr.conj().T) / 2.0
    w, u = np.linalg.eigh(sym)
    return HermEig(eigenvalues=w, eigenvectors=u)


def spectral_norm(m) -> float:
    """Largest singular value of ``m``; 0 for the zero matrix."""
    arr = as_matrix(m)
    if not arr.any():
        return 0.0
    return float(np.linalg.svd(arr, compute_uv=False)[0])
