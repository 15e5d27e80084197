"""Inequality evaluators: classical bounds, refinements, equality
characterizations, and commutator upper bounds.

Every check is emitted as a :class:`BoundReport` whose slack is oriented so
that "holds" always means slack >= -check_rel_tol * scale. Where w_A(T)
appears on a side of an inequality, the enclosure is used conservatively:
the lower estimate on the large side of >=, the upper estimate on the
small side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DimensionMismatchError, spectral_norm
from .radius import DiskTestResult, RadiusEstimate, disk_test, phase_profile, radius_theta_scan
from .space import AOperator, PsdContext, make_a_operator

SQRT2 = math.sqrt(2.0)


class ContextMismatchError(DimensionMismatchError):
    """Raised when operators bound to different PsdContexts are combined."""


@dataclass(frozen=True)
class BoundReport:
    """One inequality instance with its verdict.

    slack is rhs - lhs for upper bounds and lhs - rhs for lower bounds;
    tight additionally requires the verdict to hold.
    """

    formula_id: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    tight: bool
    scale: float


@dataclass(frozen=True)
class EqualityDiagnostic:
    """Necessity checks attached to an equality characterization: when the
    equality holds, the Re/Im profile must be constant at the target and
    W_A(T) must be the origin disk of that radius."""

    case_id: str
    equality_holds: bool
    re_im_constant: bool
    disk: DiskTestResult
    target: float


@dataclass(frozen=True)
class CommutatorComparison:
    """Both refined commutator bounds next to the 2*sqrt(2)*min of norm-radius
    products they improve on, plus the measured radii of TS +- ST."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    zamani_bound: float
    refined31: float
    refined32: float
    w_plus: float
    w_minus: float


def _report(formula_id: str, lhs: float, rhs: float, ctx: PsdContext, kind: str) -> BoundReport:
    slack = (rhs - lhs) if kind == "upper" else (lhs - rhs)
    scale = max(abs(lhs), abs(rhs), ctx.lam_max)
    holds = slack >= -ctx.tol.check_rel_tol * scale
    tight = holds and abs(slack) <= ctx.tol.equality_rel_tol * scale
    return BoundReport(formula_id, lhs, rhs, slack, holds, tight, scale)


def _part_norms(op: AOperator):
    """Norms of Re_A(T), Im_A(T) and their sum/difference, via the compressed
    Hermitian parts (exact images of the A-Cartesian parts)."""
    re_n = spectral_norm(op.h_re)
    im_n = spectral_norm(op.h_im)
    sum_n = spectral_norm(op.h_re + op.h_im)
    diff_n = spectral_norm(op.h_re - op.h_im)
    return re_n, im_n, sum_n, diff_n


def cartesian_form_norm(op: AOperator) -> float:
    """||T#A T + T T#A||_A, computed as ||C*C + CC*|| in compressed form."""
    c = op.compressed
    return spectral_norm(c.conj().T @ c + c @ c.conj().T)


def classic_bounds(op: AOperator, rad: RadiusEstimate) -> list[BoundReport]:
    """The four classical sandwich checks:
    ||T||_A/2 <= w_A(T) <= ||T||_A and ||D||_A/4 <= w_A^2(T) <= ||D||_A/2
    with D = T#A T + T T#A."""
    norm = op.seminorm
    dnorm = cartesian_form_norm(op)
    ctx = op.ctx
    return [
        _report("eqv_lower", rad.lower, norm / 2.0, ctx, "lower"),
        _report("eqv_upper", rad.upper, norm, ctx, "upper"),
        _report("eqv1_lower", rad.lower**2, dnorm / 4.0, ctx, "lower"),
        _report("eqv1_upper", rad.upper**2, dnorm / 2.0, ctx, "upper"),
    ]


def bound_th1(op: AOperator, rad: RadiusEstimate | None = None) -> BoundReport:
    """w_A(T) >= ||T||_A/2 + | ||Re_A(T)||_A - ||Im_A(T)||_A | / 2."""
    rad = rad if rad is not None else radius_theta_scan(op)
    re_n, im_n, _, _ = _part_norms(op)
    rhs = op.seminorm / 2.0 + abs(re_n - im_n) / 2.0
    return _report("th1", rad.lower, rhs, op.ctx, "lower")


def bound_th2(op: AOperator, rad: RadiusEstimate | None = None) -> BoundReport:
    """w_A(T) >= sqrt(||D||_A/4 + | ||Re_A(T)||^2 - ||Im_A(T)||^2 | / 2)."""
    rad = rad if rad is not None else radius_theta_scan(op)
    re_n, im_n, _, _ = _part_norms(op)
    rhs = math.sqrt(cartesian_form_norm(op) / 4.0 + abs(re_n**2 - im_n**2) / 2.0)
    return _report("th2", rad.lower, rhs, op.ctx, "lower")


def bound_th3(op: AOperator, rad: RadiusEstimate | None = None) -> BoundReport:
    """w_A(T) >= ||T||_A/2 + | ||Re+Im||_A - ||Re-Im||_A | / (2 sqrt 2)."""
    rad = rad if rad is not None else radius_theta_scan(op)
    _, _, sum_n, diff_n = _part_norms(op)
    rhs = op.seminorm / 2.0 + abs(sum_n - diff_n) / (2.0 * SQRT2)
    return _report("th3", rad.lower, rhs, op.ctx, "lower")


def bound_th4(op: AOperator, rad: RadiusEstimate | None = None) -> BoundReport:
    """w_A(T) >= sqrt(||D||_A/4 + | ||Re+Im||^2 - ||Re-Im||^2 | / 4)."""
    rad = rad if rad is not None else radius_theta_scan(op)
    _, _, sum_n, diff_n = _part_norms(op)
    rhs = math.sqrt(cartesian_form_norm(op) / 4.0 + abs(sum_n**2 - diff_n**2) / 4.0)
    return _report("th4", rad.lower, rhs, op.ctx, "lower")


def _equality_diag(op, rad, grid_n, case_id, target):
    ctx = op.ctx
    eq_tol = ctx.tol.equality_rel_tol
    equality_holds = abs(rad.lower - target) <= eq_tol * max(rad.lower, target, ctx.lam_max)
    thetas = np.arange(grid_n) * (math.pi / grid_n)
    re_vals = phase_profile(op, thetas)
    im_vals = phase_profile(op, thetas - math.pi / 2.0)
    dev = max(np.abs(re_vals - target).max(), np.abs(im_vals - target).max())
    re_im_constant = dev <= eq_tol * max(target, ctx.lam_max)
    return EqualityDiagnostic(
        case_id=case_id,
        equality_holds=bool(equality_holds),
        re_im_constant=bool(re_im_constant),
        disk=disk_test(op, grid_n),
        target=target,
    )


def equality_half_norm(op: AOperator, rad: RadiusEstimate, grid_n: int = 360) -> EqualityDiagnostic:
    """Diagnose w_A(T) = ||T||_A / 2: equality forces both Cartesian-part
    profiles to sit at the target for every theta and W_A(T) to be the
    origin disk of radius ||T||_A / 2."""
    return _equality_diag(op, rad, grid_n, "half_norm", op.seminorm / 2.0)


def equality_quarter_form(op: AOperator, rad: RadiusEstimate, grid_n: int = 360) -> EqualityDiagnostic:
    """Diagnose w_A(T) = sqrt(||T#A T + T T#A||_A / 4), analogously."""
    target = math.sqrt(cartesian_form_norm(op) / 4.0)
    return _equality_diag(op, rad, grid_n, "quarter_form", target)


def _require_same_context(*ops: AOperator) -> PsdContext:
    ctx = ops[0].ctx
    for other in ops[1:]:
        if other.ctx is not ctx and not np.array_equal(other.ctx.a, ctx.a):
            raise ContextMismatchError("operators are bound to different A contexts")
    return ctx


def _sign_value(sign: str) -> float:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return 1.0 if sign == "+" else -1.0


def _generalized_commutator_radius(op_t, op_x, op_y, sign, grid_n) -> float:
    ctx = _require_same_context(op_t, op_x, op_y)
    s = _sign_value(sign)
    prod = op_t.t @ op_x.t + s * (op_y.t @ op_t.t)
    return radius_theta_scan(make_a_operator(ctx, prod), grid_n).upper


def commutator_lemma(
    op_t: AOperator, op_x: AOperator, op_y: AOperator, sign: str = "-", grid_n: int = 720
) -> BoundReport:
    """w_A(TX +- YT) <= max(||X||_A, ||Y||_A) sqrt(2 ||T#A T + T T#A||_A)."""
    lhs = _generalized_commutator_radius(op_t, op_x, op_y, sign, grid_n)
    rhs = max(op_x.seminorm, op_y.seminorm) * math.sqrt(2.0 * cartesian_form_norm(op_t))
    return _report("lem1", lhs, rhs, op_t.ctx, "upper")


def commutator_th5(
    op_t: AOperator,
    op_x: AOperator,
    op_y: AOperator,
    sign: str = "-",
    rad_t: RadiusEstimate | None = None,
    grid_n: int = 720,
) -> tuple[BoundReport, BoundReport]:
    """The two refined commutator bounds; the radicands w^2 - c are clamped
    at zero (c <= w^2 is guaranteed, negativity is rounding noise)."""
    _require_same_context(op_t, op_x, op_y)
    rad_t = rad_t if rad_t is not None else radius_theta_scan(op_t, grid_n)
    lhs = _generalized_commutator_radius(op_t, op_x, op_y, sign, grid_n)
    factor = 2.0 * SQRT2 * max(op_x.seminorm, op_y.seminorm)
    re_n, im_n, sum_n, diff_n = _part_norms(op_t)
    w_sq = rad_t.upper**2
    rhs_i = factor * math.sqrt(max(w_sq - abs(re_n**2 - im_n**2) / 2.0, 0.0))
    rhs_ii = factor * math.sqrt(max(w_sq - abs(sum_n**2 - diff_n**2) / 4.0, 0.0))
    ctx = op_t.ctx
    return _report("th5_i", lhs, rhs_i, ctx, "upper"), _report("th5_ii", lhs, rhs_ii, ctx, "upper")


def commutator_compare(
    op_t: AOperator,
    op_s: AOperator,
    rad_t: RadiusEstimate | None = None,
    rad_s: RadiusEstimate | None = None,
    grid_n: int = 720,
) -> CommutatorComparison:
    """Refined bounds 2 sqrt2 min(alpha1, alpha2) and 2 sqrt2 min(beta1, beta2)
    for w_A(TS +- ST), next to 2 sqrt2 min(||T|| w_A(S), ||S|| w_A(T))."""
    ctx = _require_same_context(op_t, op_s)
    rad_t = rad_t if rad_t is not None else radius_theta_scan(op_t, grid_n)
    rad_s = rad_s if rad_s is not None else radius_theta_scan(op_s, grid_n)
    wt, ws = rad_t.upper, rad_s.upper
    nt, ns = op_t.seminorm, op_s.seminorm
    re_t, im_t, sum_t, diff_t = _part_norms(op_t)
    re_s, im_s, sum_s, diff_s = _part_norms(op_s)

    alpha1 = ns * math.sqrt(max(wt**2 - abs(re_t**2 - im_t**2) / 2.0, 0.0))
    alpha2 = nt * math.sqrt(max(ws**2 - abs(re_s**2 - im_s**2) / 2.0, 0.0))
    beta1 = ns * math.sqrt(max(wt**2 - abs(sum_t**2 - diff_t**2) / 4.0, 0.0))
    beta2 = nt * math.sqrt(max(ws**2 - abs(sum_s**2 - diff_s**2) / 4.0, 0.0))

    w_plus = radius_theta_scan(make_a_operator(ctx, op_t.t @ op_s.t + op_s.t @ op_t.t), grid_n).upper
    w_minus = radius_theta_scan(make_a_operator(ctx, op_t.t @ op_s.t - op_s.t @ op_t.t), grid_n).upper

    return CommutatorComparison(
        alpha1=alpha1,
        alpha2=alpha2,
        beta1=beta1,
        beta2=beta2,
        zamani_bound=2.0 * SQRT2 * min(nt * ws, ns * wt),
        refined31=2.0 * SQRT2 * min(alpha1, alpha2),
        refined32=2.0 * SQRT2 * min(beta1, beta2),
        w_plus=w_plus,
        w_minus=w_minus,
    )
