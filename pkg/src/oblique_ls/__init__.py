"""Iterative dense least-squares solvers with oblique Gauss-Seidel directions.

The package provides cyclic and randomized coordinate descent (CD, RCD) and
their two-column oblique counterparts (GSO, RGSO), test-problem generators,
direct reference solutions, convergence metrics and a benchmark harness.
"""
from .errors import *  # noqa: F401,F403
from .la_core import (DenseMatrix, column_norms_sq, dot_columns, matvec, matvec_transpose,
                      residual, seminorm_A)
from .metrics import (RateBounds, error_seminorm_sq, kappa_f_sq, rate_bounds, rre,
                      unitize_columns, unitized_rate_factor)
from .oracle import SpectralSummary, direct_lsq, project_null_t, project_range, spectral_summary
from .problems import (GeneratorSpec, LeastSquaresProblem, fixture, gen_uniform_matrix, generate,
                       plant_consistent, plant_inconsistent)
from .rng import CounterRNG, derive_seed
from .solvers import (METHODS, Decision, ObliqueConfig, SkipMode, SolveReport, SolverState,
                      StopMode, StopRule, Termination, cd_step, evaluate_stop, iterate,
                      oblique_step, solve, solve_cd, solve_gso, solve_method, solve_rcd,
                      solve_rgso)

__version__ = "0.1.0"
