"""Coordinate descent (CD, RCD) and oblique-direction Gauss-Seidel (GSO, RGSO).

Every solver minimises ``||A x - b||^2`` over dense ``A``. The step
arithmetic lives in compiled kernels shared by the single-step functions
(:func:`cd_step`, :func:`oblique_step`) and the driver loops, so a loop of
single steps reproduces a driver run bit for bit.

Column indices in this module's public API are 1-based.
"""
import enum
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .errors import DimensionMismatch, MissingMetadata, SameIndex, ZeroRhs
from .la_core import _check_index, _matvec_t, _residual, _sumsq, as_dense, as_vector
from .rng import CounterRNG, as_rng

__all__ = [
    "StopMode", "SkipMode", "Termination", "Decision", "StopRule", "ObliqueConfig",
    "SolverState", "SolveReport", "cd_step", "oblique_step", "evaluate_stop",
    "solve_cd", "solve_rcd", "solve_gso", "solve_rgso", "solve", "solve_method", "iterate",
    "METHODS",
]

METHODS = ("CD", "RCD", "GSO", "RGSO")
_METHOD_CODES = {"CD": K.CD, "RCD": K.RCD, "GSO": K.GSO, "RGSO": K.RGSO}


class StopMode(enum.Enum):
    RESIDUAL_RELATIVE_ERROR = "rre"
    GRADIENT_RELATIVE = "gradient"
    SOLUTION_ERROR = "solution-error"


_MODE_CODES = {
    StopMode.RESIDUAL_RELATIVE_ERROR: K.MODE_RRE,
    StopMode.SOLUTION_ERROR: K.MODE_SOLUTION,
    StopMode.GRADIENT_RELATIVE: K.MODE_GRADIENT,
}


class SkipMode(enum.Enum):
    ABSOLUTE = "absolute"
    RELATIVE_TO_NORM_SQ = "relative"


class Termination(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max-iters"


class Decision(enum.Enum):
    CONTINUE = "continue"
    CONVERGED = "converged"


@dataclass(frozen=True)
class StopRule:
    """When to stop iterating.

    ``RESIDUAL_RELATIVE_ERROR`` stops once ``||b_null - r||^2 / ||b||^2 <
    threshold``; ``SOLUTION_ERROR`` once ``||x - x_star||^2 / ||x_star||^2 <=
    threshold``; ``GRADIENT_RELATIVE`` once ``||A^T r|| <= threshold *
    ||A^T b||``. ``check_every`` defaults to 1, except ``n`` (the column
    count, resolved at solve time) for the gradient mode.
    """

    mode: StopMode = StopMode.RESIDUAL_RELATIVE_ERROR
    threshold: float = 0.5e-6
    max_iters: int = 500_000
    check_every: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", StopMode(self.mode))
        if not self.threshold >= 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.check_every is not None and self.check_every < 1:
            raise ValueError(f"check_every must be >= 1, got {self.check_every}")

    def cadence(self, n):
        if self.check_every is not None:
            return self.check_every
        return n if self.mode is StopMode.GRADIENT_RELATIVE else 1


@dataclass(frozen=True)
class ObliqueConfig:
    """Skip rule for near-parallel column pairs.

    With ``RELATIVE_TO_NORM_SQ`` an oblique step is skipped when
    ``g <= epsilon * ||A_next||^2``; with ``ABSOLUTE`` when ``g <= epsilon``.
    """

    skip_mode: SkipMode = SkipMode.RELATIVE_TO_NORM_SQ
    epsilon: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "skip_mode", SkipMode(self.skip_mode))
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")


@dataclass
class SolverState:
    """Iterate, residual ``b - A x`` and bookkeeping.

    ``i_prev`` is the column touched by the last step and ``i_prev2`` the one
    before it (1-based, 0 when there is none).
    """

    x: np.ndarray
    r: np.ndarray
    k: int = 0
    i_prev: int = 0
    i_prev2: int = 0
    updates_applied: int = 0
    skips: int = 0

    @classmethod
    def initial(cls, A, b, x0=None):
        A = as_dense(A)
        b = as_vector(b, A.rows, "b")
        x0 = np.zeros(A.cols) if x0 is None else as_vector(x0, A.cols, "x0").copy()
        return cls(x=x0, r=_residual(A.array, b, x0))

    def copy(self):
        return replace(self, x=self.x.copy(), r=self.r.copy())


@dataclass
class SolveReport:
    x_final: np.ndarray
    r_final: np.ndarray
    iterations: int
    updates_applied: int
    skips: int
    termination: Termination
    elapsed_seconds: float
    final_metric: float
    trace: list = field(default_factory=list)

    @property
    def converged(self):
        return self.termination is Termination.CONVERGED


def cd_step(state, A, i):
    """One coordinate descent step on column ``i``; returns a new state.

    >>> import numpy as np
    >>> s = SolverState.initial(np.eye(2), [7.0, 3.0])
    >>> cd_step(s, np.eye(2), 2).x
    array([0., 3.])
    """
    A = as_dense(A)
    j = _check_index(A, i)
    N = A.col_norms_sq
    new = state.copy()
    K.cd_update(A.array, N, new.x, new.r, j, new.r, False)
    new.k += 1
    new.updates_applied += 1
    new.i_prev2, new.i_prev = state.i_prev, j + 1
    return new


def oblique_step(state, A, i_prev, i_next, cfg=ObliqueConfig()):
    """One oblique step pairing column ``i_next`` with ``i_prev``.

    Assumes ``<A_{i_prev}, r> = 0`` (true after any step that touched
    ``i_prev``). Returns ``(new_state, applied)``; a skipped step leaves
    ``x`` and ``r`` untouched but still advances ``k`` and the index pair.
    """
    A = as_dense(A)
    p = _check_index(A, i_prev)
    j = _check_index(A, i_next)
    if p == j:
        raise SameIndex(f"oblique step needs two distinct columns, got {i_prev} twice")
    N = A.col_norms_sq
    new = state.copy()
    applied, *_ = K.oblique_update(
        A.array, N, new.x, new.r, p, j,
        cfg.skip_mode is SkipMode.RELATIVE_TO_NORM_SQ, cfg.epsilon, new.r, False)
    new.k += 1
    if applied:
        new.updates_applied += 1
    else:
        new.skips += 1
    new.i_prev2, new.i_prev = state.i_prev, j + 1
    return new, bool(applied)


def _stop_data(A, b, stop, b_null, x_star):
    mode = stop.mode
    zeros_m = np.zeros(A.rows)
    zeros_n = np.zeros(A.cols)
    b_norm_sq = x_star_norm_sq = atb = 0.0
    if mode is StopMode.RESIDUAL_RELATIVE_ERROR:
        if b_null is None:
            raise MissingMetadata("RRE stopping needs b_null (the null(A^T) part of b)")
        b_null = as_vector(b_null, A.rows, "b_null")
        b_norm_sq = _sumsq(b)
        if b_norm_sq == 0.0:
            raise ZeroRhs("RRE is undefined for b = 0")
    else:
        b_null = zeros_m
    if mode is StopMode.SOLUTION_ERROR:
        if x_star is None:
            raise MissingMetadata("solution-error stopping needs x_star")
        x_star = as_vector(x_star, A.cols, "x_star")
        x_star_norm_sq = _sumsq(x_star)
        if x_star_norm_sq == 0.0:
            raise ValueError("solution-error stopping is undefined for x_star = 0")
    else:
        x_star = zeros_n
    if mode is StopMode.GRADIENT_RELATIVE:
        atb = float(np.sqrt(_sumsq(_matvec_t(A.array, b))))
    return b_null, x_star, b_norm_sq, x_star_norm_sq, atb


def evaluate_stop(state, stop, A, b, *, b_null=None, x_star=None):
    """Apply ``stop`` to ``state``; returns a :class:`Decision`."""
    A = as_dense(A)
    b = as_vector(b, A.rows, "b")
    b_null, x_star, bb, xx, atb = _stop_data(A, b, stop, b_null, x_star)
    mode = _MODE_CODES[stop.mode]
    value = K.stop_metric(mode, A.array, state.x, state.r, b_null, x_star, bb, xx, atb)
    if K.is_converged(mode, value, stop.threshold, atb):
        return Decision.CONVERGED
    return Decision.CONTINUE


def _solve(method, A, b, x0, stop, cfg, rng, b_null, x_star, trace):
    A = as_dense(A)
    b = as_vector(b, A.rows, "b")
    n = A.cols
    if method == "GSO" and n < 2:
        raise DimensionMismatch("GSO needs at least two columns")
    N = A.col_norms_sq
    stop = StopRule() if stop is None else stop
    cfg = ObliqueConfig() if cfg is None else cfg
    b_null_v, x_star_v, bb, xx, atb = _stop_data(A, b, stop, b_null, x_star)
    state = SolverState.initial(A, b, x0)
    every = stop.cadence(n)

    stride = int(trace) if trace else 0
    size = stop.max_iters // (every * stride) + 3 if stride else 0
    trace_k = np.zeros(size, dtype=np.int64)
    trace_v = np.zeros(size)

    stream = rng if rng is not None else CounterRNG(0)
    t0 = time.perf_counter()
    k, updates, skips, converged, counter, n_trace, _, _, value = K.drive(
        _METHOD_CODES[method], A.array, N, state.x, state.r, b_null_v, x_star_v,
        _MODE_CODES[stop.mode], float(stop.threshold), int(stop.max_iters), int(every),
        cfg.skip_mode is SkipMode.RELATIVE_TO_NORM_SQ, float(cfg.epsilon),
        np.uint64(stream.seed), stream.counter, bb, xx, atb, stride, trace_k, trace_v)
    elapsed = time.perf_counter() - t0
    stream.counter = int(counter)

    return SolveReport(
        x_final=state.x,
        r_final=state.r,
        iterations=int(k),
        updates_applied=int(updates),
        skips=int(skips),
        termination=Termination.CONVERGED if converged else Termination.MAX_ITERS,
        elapsed_seconds=elapsed,
        final_metric=float(value),
        trace=list(zip(trace_k[:n_trace].tolist(), trace_v[:n_trace].tolist())),
    )


def solve_cd(A, b, x0=None, stop=None, *, b_null=None, x_star=None, trace=0):
    """Cyclic coordinate descent: step ``k`` updates column ``k mod n + 1``.

    Parameters
    ----------
    A : DenseMatrix or array_like, shape (m, n)
    b : array_like, shape (m,)
    x0 : array_like, shape (n,), optional
        Starting point; zeros by default.
    stop : StopRule, optional
        Defaults to ``StopRule()`` (RRE < 0.5e-6, at most 500000 steps).
    b_null, x_star : array_like, optional
        The null(A^T) component of ``b`` (RRE mode) or the reference solution
        (solution-error mode).
    trace : int
        Record ``(iteration, metric)`` at every ``trace``-th stop check;
        0 disables.

    Returns
    -------
    SolveReport
    """
    return _solve("CD", A, b, x0, stop, None, None, b_null, x_star, trace)


def solve_rcd(A, b, x0=None, stop=None, *, b_null=None, x_star=None, rng=0, trace=0):
    """Randomized coordinate descent with columns drawn uniformly.

    ``rng`` is a :class:`~oblique_ls.rng.CounterRNG` (advanced in place) or
    an integer seed. Other arguments as in :func:`solve_cd`.
    """
    return _solve("RCD", A, b, x0, stop, None, as_rng(rng), b_null, x_star, trace)


def solve_gso(A, b, x0=None, stop=None, cfg=None, *, b_null=None, x_star=None, trace=0):
    """Cyclic Gauss-Seidel with oblique directions.

    The first step is a coordinate step on column 1; step ``k >= 1`` pairs
    column ``k mod n + 1`` with the previous column. Skipped steps (see
    :class:`ObliqueConfig`) count as iterations.
    """
    return _solve("GSO", A, b, x0, stop, cfg, None, b_null, x_star, trace)


def solve_rgso(A, b, x0=None, stop=None, cfg=None, *, b_null=None, x_star=None,
               rng=0, trace=0):
    """Randomized oblique Gauss-Seidel.

    Step 1 is a coordinate step on a random column, step 2 an oblique step
    on a random different column, later steps draw uniformly outside the
    last two columns. For ``n = 2`` only the last column is excluded and for
    ``n = 1`` every step is a coordinate step.
    """
    return _solve("RGSO", A, b, x0, stop, cfg, as_rng(rng), b_null, x_star, trace)


def solve_method(method, A, b, x0=None, stop=None, cfg=None, *, b_null=None, x_star=None,
                 rng=0, trace=0):
    """Dispatch to the solver named ``method`` (one of :data:`METHODS`)."""
    method = method.upper()
    if method not in _METHOD_CODES:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    stream = as_rng(rng) if method in ("RCD", "RGSO") else None
    return _solve(method, A, b, x0, stop, cfg, stream, b_null, x_star, trace)


def solve(problem, method, stop=None, cfg=None, *, x0=None, rng=0, trace=0):
    """Run ``method`` (one of :data:`METHODS`) on a LeastSquaresProblem.

    RRE and solution-error metadata are taken from the problem.
    """
    b_null = problem.b_null
    if b_null is None and problem.kind == "consistent":
        b_null = np.zeros(problem.A.rows)
    return solve_method(method, problem.A, problem.b, x0, stop, cfg, b_null=b_null,
                        x_star=problem.x_planted, rng=rng, trace=trace)


def iterate(method, A, b, x0=None, cfg=None, rng=0, steps=100):
    """Yield ``(state, column, applied)`` after each of ``steps`` steps.

    Uses the same index sequence and step kernels as the ``solve_*``
    functions, so the final state equals a driver run capped at ``steps``.
    ``column`` is 1-based.
    """
    method = method.upper()
    code = _METHOD_CODES[method]
    A = as_dense(A)
    cfg = ObliqueConfig() if cfg is None else cfg
    stream = as_rng(rng) if method in ("RCD", "RGSO") else CounterRNG(0)
    state = SolverState.initial(A, b, x0)
    n = A.cols
    for k in range(steps):
        j, counter = K.next_index(code, k, n, state.i_prev - 1, state.i_prev2 - 1,
                                  np.uint64(stream.seed), stream.counter)
        stream.counter = int(counter)
        if K.uses_oblique(code, k, n):
            state, applied = oblique_step(state, A, state.i_prev, int(j) + 1, cfg)
        else:
            state, applied = cd_step(state, A, int(j) + 1), True
        yield state, int(j) + 1, applied
