"""
Three nearly collinear 2-column systems
=======================================

Every system below has least-squares solution (1, 1), but the two columns
point in almost the same direction. Cyclic coordinate descent crawls;
the oblique method finishes after its initial coordinate step plus one
oblique step.
"""
import numpy as np

from oblique_ls import (StopMode, StopRule, fixture, rate_bounds, solve_cd, solve_gso,
                        spectral_summary)
from oblique_ls.problems import FIXTURE_NAMES

stop = StopRule(StopMode.SOLUTION_ERROR, threshold=0.5e-6, max_iters=5_000_000)

for name in FIXTURE_NAMES:
    p = fixture(name)
    a = p.A.array
    cos = a[:, 0] @ a[:, 1] / np.linalg.norm(a[:, 0]) / np.linalg.norm(a[:, 1])
    print(f"{name}  ({p.kind}, cosine between columns {cos:.8f})")
    print("  kappa_F^2 =", f"{rate_bounds(p.A).kappa_f_sq:.4g}",
          " sigma_min =", f"{spectral_summary(p.A).sigma_min:.4g}")

    cd = solve_cd(p.A, p.b, stop=stop, x_star=p.x_planted)
    print(f"  CD : {cd.iterations:>8d} steps  x = {cd.x_final}")

    gso = solve_gso(p.A, p.b, stop=stop, x_star=p.x_planted)
    print(f"  GSO: {gso.iterations:>8d} steps  x = {gso.x_final}"
          f"  |x - 1| = {np.abs(gso.x_final - 1).max():.1e}")
