"""Direct dense reference computations used as ground truth.

These are correctness-grade routines: least squares through a complete
orthogonal decomposition, the two orthogonal projections it induces, and a
Gram-matrix singular value summary.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ZeroMatrix
from .la_core import as_dense, as_vector

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class SpectralSummary:
    sigma_min: float
    sigma_max: float
    rank: int
    frob_norm_sq: float
    singular_values: np.ndarray


def direct_lsq(A, z):
    """Minimal-norm minimiser of ``||A w - z||``.

    QR with column pivoting decides the numerical rank ``r`` (diagonal of R
    above ``|R_11| * max(m, n) * eps``); the leading ``r`` rows of R are then
    triangularised from the right, giving ``A P = Q1 T^T Z^T`` with orthonormal
    ``Z``, and the minimal-norm solution is ``P Z T^{-T} Q1^T z``.
    """
    A = as_dense(A)
    z = as_vector(z, A.rows, "z")
    m, n = A.shape
    Q, R, perm = scipy.linalg.qr(A.array, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        return np.zeros(n)
    rank = int(np.sum(diag > diag[0] * max(m, n) * _EPS))
    Z, T = scipy.linalg.qr(R[:rank, :].T, mode="economic")
    y = scipy.linalg.solve_triangular(T, Q[:, :rank].T @ z, trans="T")
    w = np.zeros(n)
    w[perm] = Z @ y
    return w


def project_range(A, z):
    """Orthogonal projection of ``z`` onto range(A)."""
    A = as_dense(A)
    return A.array @ direct_lsq(A, z)


def project_null_t(A, z):
    """Orthogonal projection of ``z`` onto null(A^T)."""
    z = as_vector(z, as_dense(A).rows, "z")
    return z - project_range(A, z)


def spectral_summary(A):
    """Singular values from the eigenvalues of the smaller Gram matrix.

    Eigenvalues are clamped at zero. An eigenvalue counts toward the rank
    when it exceeds ``lambda_max * max(m, n) * eps``; this is the squared
    form of the usual pseudoinverse cut-off and keeps Gram rounding noise
    (of order ``eps * lambda_max``) out of the rank. Reliable only while
    ``kappa(A)`` stays well below ``1e8``.
    """
    A = as_dense(A)
    a = A.array
    m, n = A.shape
    gram = a.T @ a if n <= m else a @ a.T
    lam = np.clip(scipy.linalg.eigvalsh(gram), 0.0, None)[::-1]
    if lam[0] == 0.0:
        raise ZeroMatrix("all singular values are zero")
    keep = lam > lam[0] * max(m, n) * _EPS
    sigma = np.sqrt(lam[keep])
    return SpectralSummary(
        sigma_min=float(sigma[-1]),
        sigma_max=float(sigma[0]),
        rank=int(keep.sum()),
        frob_norm_sq=A.frobenius_norm_sq(),
        singular_values=sigma,
    )
