"""Dense column-major kernels shared by every solver.

All reductions are plain sequential loops over rows in ascending order, so
results are bit-for-bit reproducible on one platform. Column indices at the
public boundary are 1-based; kernels prefixed with ``_`` take 0-based
indices.
"""
import numba as nb
import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, ZeroColumn

_jit = {"nogil": True, "cache": True}


@nb.njit(**_jit)
def _col_norms_sq(A):
    m, n = A.shape
    out = np.empty(n)
    for j in range(n):
        s = 0.0
        for i in range(m):
            s += A[i, j] * A[i, j]
        out[j] = s
    return out


@nb.njit(**_jit)
def _dot_cols(A, i, j):
    s = 0.0
    for row in range(A.shape[0]):
        s += A[row, i] * A[row, j]
    return s


@nb.njit(**_jit)
def _dot_col_vec(A, j, v):
    s = 0.0
    for row in range(A.shape[0]):
        s += A[row, j] * v[row]
    return s


@nb.njit(**_jit)
def _matvec(A, x):
    m, n = A.shape
    out = np.zeros(m)
    for j in range(n):
        xj = x[j]
        for i in range(m):
            out[i] += A[i, j] * xj
    return out


@nb.njit(**_jit)
def _matvec_t(A, r):
    m, n = A.shape
    out = np.empty(n)
    for j in range(n):
        s = 0.0
        for i in range(m):
            s += A[i, j] * r[i]
        out[j] = s
    return out


@nb.njit(**_jit)
def _sumsq(v):
    s = 0.0
    for i in range(v.shape[0]):
        s += v[i] * v[i]
    return s


@nb.njit(**_jit)
def _residual(A, b, x):
    r = _matvec(A, x)
    for i in range(r.shape[0]):
        r[i] = b[i] - r[i]
    return r


class DenseMatrix:
    """Immutable m-by-n float64 matrix stored column-major.

    Column squared norms are computed on first use and cached.

    Parameters
    ----------
    values : array_like, shape (m, n)
        Entries; copied into a read-only Fortran-ordered array. Must be
        finite.
    """

    __slots__ = ("_a", "_norms")

    def __init__(self, values):
        if isinstance(values, DenseMatrix):
            self._a = values._a
            self._norms = values._norms
            return
        a = np.array(values, dtype=np.float64, order="F", copy=True)
        if a.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D matrix, got ndim={a.ndim}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionMismatch(f"matrix must be non-empty, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        a.flags.writeable = False
        self._a = a
        self._norms = None

    @classmethod
    def from_column_major(cls, data, rows, cols):
        """Build from a flat column-major listing of length ``rows * cols``."""
        data = np.asarray(data, dtype=np.float64).ravel()
        if data.size != rows * cols:
            raise DimensionMismatch(
                f"expected {rows * cols} values for a {rows}x{cols} matrix, got {data.size}")
        return cls(data.reshape((rows, cols), order="F"))

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def array(self):
        """The read-only Fortran-ordered ndarray backing this matrix."""
        return self._a

    @property
    def data(self):
        """Flat column-major values (a read-only view)."""
        return self._a.ravel(order="F")

    @property
    def col_norms_sq(self):
        if self._norms is None:
            norms = _col_norms_sq(self._a)
            zero = np.flatnonzero(norms == 0.0)
            if zero.size:
                raise ZeroColumn(int(zero[0]) + 1)
            norms.flags.writeable = False
            self._norms = norms
        return self._norms

    def column(self, i):
        """Column ``i`` (1-based) as a read-only view."""
        return self._a[:, _check_index(self, i)]

    def frobenius_norm_sq(self):
        return float(np.sum(_col_norms_sq(self._a)))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._a
        return self._a.astype(dtype)

    def __repr__(self):
        return f"DenseMatrix(rows={self.rows}, cols={self.cols})"


def as_dense(A):
    return A if isinstance(A, DenseMatrix) else DenseMatrix(A)


def as_vector(v, length=None, name="vector"):
    """Validate a 1-D finite float64 vector, optionally of a given length."""
    out = np.ascontiguousarray(v, dtype=np.float64)
    if out.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {out.shape}")
    if length is not None and out.shape[0] != length:
        raise DimensionMismatch(f"{name} has length {out.shape[0]}, expected {length}")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} entries must be finite")
    return out


def _check_index(A, i):
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
        raise TypeError(f"column index must be an integer, got {i!r}")
    if not 1 <= i <= A.cols:
        raise IndexOutOfRange(f"column index {i} outside 1..{A.cols}")
    return int(i) - 1


def column_norms_sq(A):
    """Squared Euclidean norm of every column; raises ZeroColumn."""
    return as_dense(A).col_norms_sq


def dot_columns(A, i, j):
    """Inner product of columns ``i`` and ``j`` (1-based)."""
    A = as_dense(A)
    return float(_dot_cols(A.array, _check_index(A, i), _check_index(A, j)))


def matvec(A, x):
    A = as_dense(A)
    return _matvec(A.array, as_vector(x, A.cols, "x"))


def matvec_transpose(A, r):
    A = as_dense(A)
    return _matvec_t(A.array, as_vector(r, A.rows, "r"))


def seminorm_A(A, v):
    """``sqrt(v^T A^T A v)``, i.e. the Euclidean norm of ``A v``."""
    return float(np.sqrt(_sumsq(matvec(A, v))))


def residual(A, b, x):
    """``b - A x``."""
    A = as_dense(A)
    return _residual(A.array, as_vector(b, A.rows, "b"), as_vector(x, A.cols, "x"))
