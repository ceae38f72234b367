"""Test problems: uniform random matrices, planted solutions, fixed systems.

Generation consumes one :class:`~oblique_ls.rng.CounterRNG` stream in a
fixed order: the matrix entries column by column, then the planted solution,
then (inconsistent problems only) the vector whose null(A^T) component
becomes ``b_null``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import BadInterval, NullSpaceEmpty, UnknownFixture
from .la_core import DenseMatrix, _matvec, _sumsq, as_dense, as_vector
from .oracle import project_null_t
from .rng import as_rng

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class LeastSquaresProblem:
    """``min ||A x - b||^2`` with optional known structure.

    ``x_planted`` is a known least-squares solution and ``b_null`` the
    component of ``b`` in null(A^T), so that ``b = A x_planted + b_null``.
    """

    A: DenseMatrix
    b: np.ndarray
    x_planted: np.ndarray | None = None
    b_null: np.ndarray | None = None
    kind: str = UNKNOWN


@dataclass(frozen=True)
class GeneratorSpec:
    m: int
    n: int
    c: float = 0.0
    consistent: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"need m, n >= 1, got {self.m}x{self.n}")
        _check_interval(self.c)


def _check_interval(c):
    if not 0.0 <= c < 1.0:
        raise BadInterval(f"lower endpoint c must lie in [0, 1), got {c}")


def gen_uniform_matrix(m, n, c, rng):
    """m-by-n matrix with i.i.d. entries uniform on [c, 1), column-major fill."""
    _check_interval(c)
    if m < 1 or n < 1:
        raise ValueError(f"need m, n >= 1, got {m}x{n}")
    rng = as_rng(rng)
    a = np.empty((m, n), order="F")
    rng.fill(a.reshape(-1, order="F"), c, 1.0)
    return DenseMatrix(a)


def plant_consistent(A, rng, x_planted=None):
    """``b = A x`` for ``x`` uniform on [0, 1)^n (or the given ``x_planted``)."""
    A = as_dense(A)
    if x_planted is None:
        x_planted = as_rng(rng).random(A.cols)
    else:
        x_planted = as_vector(x_planted, A.cols, "x_planted").copy()
    b = _matvec(A.array, x_planted)
    return LeastSquaresProblem(A, b, x_planted, np.zeros(A.rows), CONSISTENT)


def plant_inconsistent(A, rng, x_planted=None, b_null=None, scale=1.0, attempts=10):
    """``b = A x + b_null`` with ``b_null`` in null(A^T).

    ``b_null`` is the null(A^T) projection of a vector uniform on [0, 1)^m,
    multiplied by ``scale``; draws whose projection is negligible
    (``<= 1e-10 * ||z||``) are redrawn up to ``attempts`` times.
    """
    A = as_dense(A)
    rng = as_rng(rng)
    if x_planted is None:
        x_planted = rng.random(A.cols)
    else:
        x_planted = as_vector(x_planted, A.cols, "x_planted").copy()
    if b_null is None:
        for _ in range(attempts):
            z = rng.random(A.rows)
            candidate = project_null_t(A, z)
            if np.sqrt(_sumsq(candidate)) > 1e-10 * np.sqrt(_sumsq(z)):
                b_null = scale * candidate
                break
        else:
            raise NullSpaceEmpty(
                f"null(A^T) is numerically trivial for this {A.rows}x{A.cols} matrix")
    else:
        b_null = as_vector(b_null, A.rows, "b_null").copy()
    b = _matvec(A.array, x_planted) + b_null
    return LeastSquaresProblem(A, b, x_planted, b_null, INCONSISTENT)


def generate(spec):
    """Problem for a :class:`GeneratorSpec`; deterministic in ``spec.seed``."""
    rng = as_rng(spec.seed)
    A = gen_uniform_matrix(spec.m, spec.n, spec.c, rng)
    if spec.consistent:
        return plant_consistent(A, rng)
    return plant_inconsistent(A, rng)


_FIXTURES = {
    "sys_3_11": ([[5.0, 45.0], [9.0, 80.0]], [50.0, 89.0], None),
    "sys_3_12": ([[1.0, 11.0], [-2.0, -21.0], [3.0, 32.0]], [12.0, -23.0, 35.0], None),
    "sys_3_13": ([[1.0, 9.0], [4.0, 36.0], [13.0, 118.0]], [0.0, 42.5, 131.0],
                 [-10.0, 2.5, 0.0]),
}
FIXTURE_NAMES = tuple(_FIXTURES)


def fixture(name):
    """The small nearly-collinear systems with least-squares solution (1, 1).

    ``sys_3_11`` is square and consistent, ``sys_3_12`` overdetermined and
    consistent, ``sys_3_13`` overdetermined and inconsistent.
    """
    try:
        a, b, b_null = _FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; expected one of {FIXTURE_NAMES}")
    A = DenseMatrix(a)
    if b_null is None:
        return LeastSquaresProblem(A, np.array(b), np.ones(2), np.zeros(A.rows), CONSISTENT)
    return LeastSquaresProblem(A, np.array(b), np.ones(2), np.array(b_null), INCONSISTENT)
