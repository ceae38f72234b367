"""Convergence metrics and theoretical contraction factors."""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRank, DimensionMismatch, NotUnitized, ParallelColumns, ZeroRhs
from .la_core import _matvec, _sumsq, as_dense, as_vector
from .oracle import spectral_summary


@dataclass(frozen=True)
class RateBounds:
    """Expected per-step contraction of ``||A(x - x_ls)||^2``.

    ``rcd_factor = 1 - 1/kappa_f_sq`` for uniform coordinate descent and
    ``rgso_factor = 1 - 1/((n - 2)(kappa_f_sq - 1))`` for the randomized
    oblique method (``None`` when ``n < 3``), where
    ``kappa_f_sq = ||A||_F^2 / sigma_min^2``.
    """

    kappa_f_sq: float
    rcd_factor: float
    rgso_factor: float | None
    n: int


def rre(r, b_null, b):
    """Residual relative error ``||b_null - r||^2 / ||b||^2``."""
    b = as_vector(b, name="b")
    r = as_vector(r, b.shape[0], "r")
    b_null = as_vector(b_null, b.shape[0], "b_null")
    bb = _sumsq(b)
    if bb == 0.0:
        raise ZeroRhs("RRE is undefined for b = 0")
    return float(_sumsq(b_null - r) / bb)


def error_seminorm_sq(A, x, x_ref):
    """``||A (x - x_ref)||^2``.

    For any least-squares solution ``x_ref`` this is ``F(x) - min F`` with
    ``F(x) = ||A x - b||^2``, but without the cancellation of subtracting
    two residual norms.
    """
    A = as_dense(A)
    x = as_vector(x, A.cols, "x")
    x_ref = as_vector(x_ref, A.cols, "x_ref")
    return float(_sumsq(_matvec(A.array, x - x_ref)))


def kappa_f_sq(A, spectral=None):
    A = as_dense(A)
    spectral = spectral_summary(A) if spectral is None else spectral
    if not spectral.sigma_min > 0.0:
        raise DegenerateRank("smallest nonzero singular value is undefined")
    return spectral.frob_norm_sq / spectral.sigma_min ** 2


def rate_bounds(A, spectral=None):
    A = as_dense(A)
    k2 = kappa_f_sq(A, spectral)
    n = A.cols
    rgso = None
    if n >= 3:
        rgso = 1.0 - 1.0 / ((n - 2) * (k2 - 1.0)) if k2 > 1.0 else 0.0
    return RateBounds(kappa_f_sq=k2, rcd_factor=1.0 - 1.0 / k2, rgso_factor=rgso, n=n)


def unitized_rate_factor(A, i_k, i_prev, spectral=None):
    """Per-step RGSO contraction bound for a matrix with unit-norm columns.

    ``1 - sigma_min^2 / ((1 - gamma^2)(||A||_F^2 - 2))`` where ``gamma`` is
    the smallest ``|<A_s, A_{i_k}>|`` over columns ``s`` other than ``i_k``
    and ``i_prev`` (1-based).
    """
    A = as_dense(A)
    n = A.cols
    if n < 3:
        raise DimensionMismatch("the unitized bound needs at least three columns")
    if not (1 <= i_k <= n and 1 <= i_prev <= n) or i_k == i_prev:
        raise ValueError(f"need two distinct columns in 1..{n}, got {i_k}, {i_prev}")
    norms = A.col_norms_sq
    if np.max(np.abs(norms - 1.0)) > 1e-12:
        raise NotUnitized("columns must have unit Euclidean norm")
    a = A.array
    others = [s for s in range(n) if s not in (i_k - 1, i_prev - 1)]
    gamma = min(abs(float(a[:, s] @ a[:, i_k - 1])) for s in others)
    if gamma >= 1.0 - 1e-12:
        raise ParallelColumns(f"column {i_k} is parallel to another column")
    spectral = spectral_summary(A) if spectral is None else spectral
    return 1.0 - spectral.sigma_min ** 2 / ((1.0 - gamma ** 2) * (spectral.frob_norm_sq - 2.0))


def unitize_columns(A):
    """Scale every column of ``A`` to unit norm."""
    A = as_dense(A)
    return type(A)(A.array / np.sqrt(A.col_norms_sq))
