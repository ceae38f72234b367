"""
Columns drifting toward collinearity
====================================

Raising the lower end c of the entry interval [c, 1) makes the columns of a
uniform random matrix increasingly similar. The scaled condition number
kappa_F^2 grows quickly; coordinate descent slows down with it while the
randomized oblique method is barely affected.
"""
from oblique_ls import GeneratorSpec, StopRule, generate, rate_bounds, solve

m, n = 3000, 50
stop = StopRule(max_iters=500_000)

print(f"{'c':>5s} {'kappa_F^2':>10s} {'CD':>8s} {'RCD':>8s} {'GSO':>8s} {'RGSO':>6s}")
for c in (0.0, 0.3, 0.6, 0.9):
    p = generate(GeneratorSpec(m, n, c, True, seed=1))
    its = []
    for method in ("CD", "RCD", "GSO", "RGSO"):
        rep = solve(p, method, stop, rng=5)
        its.append(str(rep.iterations) if rep.converged else "DNF")
    print(f"{c:5.2f} {rate_bounds(p.A).kappa_f_sq:10.4g} " +
          " ".join(f"{v:>8s}" for v in its[:3]) + f" {its[3]:>6s}")
