"""Semi-Hilbertian structure induced by a positive semidefinite A.

A positive operator A defines the semi-inner product <x,y>_A = <Ax,y> and
the seminorms it induces on vectors and operators. :class:`PsdContext`
packages A together with its eigendecomposition, Moore-Penrose inverse,
square root and range projection; :class:`AOperator` binds an operator T
to that context with its A-adjoint and Cartesian parts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    HermEig,
    LinAlgInputError,
    NotPsdError,
    TolerancePolicy,
    as_square_matrix,
    as_vector,
    hermitian_eig,
    spectral_norm,
)


class NotAdjointableError(LinAlgInputError):
    """Raised when an A-adjoint is requested for T outside B_A(H)."""


@dataclass(frozen=True)
class PsdContext:
    """The operator A with everything derived from its spectrum.

    ``sqrt_a``, ``pinv_a``, ``pinv_sqrt_a`` and ``proj`` all share the rank
    decision: spectral components at or below rank_rel_tol * lambda_max are
    treated as exactly zero.
    """

    dim: int
    a: np.ndarray
    eig: HermEig
    rank: int
    sqrt_a: np.ndarray
    pinv_a: np.ndarray
    pinv_sqrt_a: np.ndarray
    proj: np.ndarray
    tol: TolerancePolicy

    @property
    def lam_max(self) -> float:
        return float(max(self.eig.eigenvalues[-1], 0.0))

    @property
    def range_basis(self) -> np.ndarray:
        """Orthonormal columns spanning range(A)."""
        cutoff = self.tol.rank_rel_tol * self.lam_max
        keep = self.eig.eigenvalues > cutoff
        return self.eig.eigenvectors[:, keep]


def psd_decompose(a_raw, tol: TolerancePolicy | None = None) -> PsdContext:
    """Validate and spectrally decompose a positive semidefinite A.

    The input is symmetrized; eigenvalues within -rank_rel_tol * lambda_max
    of zero are clamped to 0, anything more negative is an error. A zero
    matrix yields the rank-0 context.
    """
    tol = tol if tol is not None else TolerancePolicy()
    arr = as_square_matrix(a_raw)
    eig = hermitian_eig(arr, asym_rel_tol=tol.check_rel_tol)
    w = eig.eigenvalues
    lam_max = float(max(w[-1], 0.0))
    cutoff = tol.rank_rel_tol * lam_max
    if w[0] < -cutoff:
        raise NotPsdError(
            f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})"
        )
    w = np.clip(w, 0.0, None)
    keep = w > cutoff
    rank = int(keep.sum())
    u = eig.eigenvectors

    w_kept = np.where(keep, w, 0.0)
    inv_w = np.divide(1.0, w, out=np.zeros_like(w), where=keep)
    sqrt_w = np.sqrt(w_kept)
    inv_sqrt_w = np.divide(1.0, sqrt_w, out=np.zeros_like(w), where=keep)

    def weighted(diag):
        return (u * diag) @ u.conj().T

    return PsdContext(
        dim=arr.shape[0],
        a=(arr + arr.conj().T) / 2.0,
        eig=HermEig(eigenvalues=w, eigenvectors=u),
        rank=rank,
        sqrt_a=weighted(sqrt_w),
        pinv_a=weighted(inv_w),
        pinv_sqrt_a=weighted(inv_sqrt_w),
        proj=weighted(keep.astype(float)),
        tol=tol,
    )


def a_inner(ctx: PsdContext, x, y) -> complex:
    """The semi-inner product <x,y>_A = <Ax,y> = y* A x."""
    xv = as_vector(x, ctx.dim)
    yv = as_vector(y, ctx.dim)
    return complex(yv.conj() @ (ctx.a @ xv))


def a_norm_vec(ctx: PsdContext, x) -> float:
    """The seminorm ||x||_A; vanishes on null(A)."""
    xv = as_vector(x, ctx.dim)
    val = (xv.conj() @ (ctx.a @ xv)).real
    return float(np.sqrt(max(val, 0.0)))


def is_adjointable(ctx: PsdContext, t) -> bool:
    """Douglas condition R(T*A) subset R(A), tested as a relative residual.

    Vacuously true when T*A = 0 and whenever A is invertible.
    """
    arr = as_square_matrix(t, ctx.dim)
    ta = arr.conj().T @ ctx.a
    residual = spectral_norm(ta - ctx.proj @ ta)
    scale = max(spectral_norm(ta), ctx.lam_max)
    return residual <= ctx.tol.check_rel_tol * scale if scale > 0.0 else True


@dataclass(frozen=True)
class AOperator:
    """An operator T bound to a PsdContext, with its A-adjoint and parts.

    ``compressed`` is A^{1/2} T (A^{1/2})+, the similarity under which all
    A-seminorms become ordinary spectral norms; ``h_re``/``h_im`` are its
    Hermitian and skew parts, i.e. the compressions of Re_A(T) and Im_A(T).
    """

    ctx: PsdContext
    t: np.ndarray
    adjointable: bool
    sharp: np.ndarray
    re_a: np.ndarray
    im_a: np.ndarray
    compressed: np.ndarray = field(repr=False)
    h_re: np.ndarray = field(repr=False)
    h_im: np.ndarray = field(repr=False)
    seminorm: float = 0.0


def make_a_operator(ctx: PsdContext, t) -> AOperator:
    """Construct the A-adjoint T#A = A+ T* A and the Cartesian parts of T.

    Raises NotAdjointableError when T violates the Douglas condition; the
    caller is expected to classify such T via :func:`is_adjointable` first.
    """
    arr = as_square_matrix(t, ctx.dim)
    if not is_adjointable(ctx, arr):
        raise NotAdjointableError("T admits no A-adjoint (R(T*A) not within R(A))")
    sharp = ctx.pinv_a @ arr.conj().T @ ctx.a
    re_a = (arr + sharp) / 2.0
    im_a = (arr - sharp) * (-0.5j)
    compressed = ctx.sqrt_a @ arr @ ctx.pinv_sqrt_a
    h_re = (compressed + compressed.conj().T) / 2.0
    h_im = (compressed - compressed.conj().T) * (-0.5j)
    return AOperator(
        ctx=ctx,
        t=arr,
        adjointable=True,
        sharp=sharp,
        re_a=re_a,
        im_a=im_a,
        compressed=compressed,
        h_re=h_re,
        h_im=h_im,
        seminorm=spectral_norm(compressed) if compressed.any() else 0.0,
    )


def op_seminorm(op: AOperator) -> float:
    """||T||_A = sigma_max(A^{1/2} T (A^{1/2})+); 0 iff ATA = 0."""
    return op.seminorm


def seminorm_mat(ctx: PsdContext, m) -> float:
    """A-seminorm of a raw matrix, without building a full AOperator."""
    arr = as_square_matrix(m, ctx.dim)
    return spectral_norm(ctx.sqrt_a @ arr @ ctx.pinv_sqrt_a)


def is_a_selfadjoint(ctx: PsdContext, t) -> bool:
    """True iff AT = T*A within the relative check tolerance."""
    arr = as_square_matrix(t, ctx.dim)
    at = ctx.a @ arr
    residual = spectral_norm(at - arr.conj().T @ ctx.a)
    scale = max(spectral_norm(at), ctx.lam_max)
    return residual <= ctx.tol.check_rel_tol * scale if scale > 0.0 else True
