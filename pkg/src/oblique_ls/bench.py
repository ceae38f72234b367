"""Median-of-repeats benchmark tables and the c-sweep.

Every repeat draws a fresh problem from a child seed
``derive_seed(master_seed, spec_index, repeat_index)``; all requested
methods then run on that same instance, the randomized ones with stream
``derive_seed(child_seed, method_index)`` (``method_index`` is the position
in ``METHODS``). Iteration columns are therefore a pure function of the
master seed, whatever ``workers`` is. Timings wrap the solver loop only.
"""
import csv
import io
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import inf, isinf

from .metrics import kappa_f_sq
from .problems import GeneratorSpec, generate
from .rng import derive_seed
from .solvers import METHODS, StopRule, Termination, solve

DNF = "DNF"
SPEEDUP_PAIRS = {"speedup1": ("CD", "GSO"), "speedup2": ("RCD", "RGSO")}
TABLE_COLUMNS = ["m", "n", "c", "consistent", "method", "repeats",
                 "median_it", "median_cpu_seconds", "speedup"]


@dataclass(frozen=True)
class TableSpec:
    m: int
    n: int
    c: float = 0.0
    consistent: bool = True


@dataclass(frozen=True)
class BenchRow:
    spec: TableSpec
    method: str
    median_it: float | None
    median_cpu_seconds: float | None
    repeats: int

    @property
    def dnf(self):
        return self.median_it is None


@dataclass(frozen=True)
class SpeedupRow:
    spec: TableSpec
    name: str
    value: float | None


@dataclass
class BenchTable:
    rows: list
    speedups: list
    # per (spec_index, method): iteration counts per repeat, None for DNF
    iterations: dict

    def row(self, spec, method):
        for r in self.rows:
            if r.spec == spec and r.method == method:
                return r
        raise KeyError((spec, method))

    def speedup(self, spec, name):
        for s in self.speedups:
            if s.spec == spec and s.name == name:
                return s.value
        raise KeyError((spec, name))

    def to_csv(self):
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        by_spec = {}
        for r in self.rows:
            by_spec.setdefault(r.spec, []).append(r)
        for s in self.speedups:
            by_spec.setdefault(s.spec, []).append(s)
        for spec, items in by_spec.items():
            head = [spec.m, spec.n, _fmt(spec.c), int(spec.consistent)]
            for item in items:
                if isinstance(item, BenchRow):
                    w.writerow(head + [item.method, item.repeats, _fmt_it(item.median_it),
                                       _fmt(item.median_cpu_seconds), ""])
                else:
                    w.writerow(head + [item.name, "", "", "", _fmt(item.value)])
        return out.getvalue()


def _fmt(v):
    if v is None:
        return DNF
    return format(v, ".6g")


def _fmt_it(v):
    if v is None:
        return DNF
    return str(int(v)) if float(v).is_integer() else format(v, ".1f")


def _median(values):
    """Median treating ``None`` (did not finish) as +inf; ``None`` if infinite."""
    med = statistics.median([inf if v is None else v for v in values])
    return None if isinf(med) else med


def _map(fn, jobs, workers):
    if workers <= 1:
        return [fn(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _run_methods(problem, methods, child, stop, cfg):
    out = {}
    for name in methods:
        rep = solve(problem, name, stop, cfg, rng=derive_seed(child, METHODS.index(name)))
        it = rep.iterations if rep.termination is Termination.CONVERGED else None
        out[name] = (it, rep.elapsed_seconds)
    return out


def _check_methods(methods):
    methods = tuple(m.upper() for m in methods)
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; expected one of {METHODS}")
    return methods


def run_table(specs, methods=METHODS, repeats=50, master_seed=0, stop=None, cfg=None,
              workers=1):
    """Median iterations and solver time per (spec, method), plus speed-ups.

    Parameters
    ----------
    specs : sequence of TableSpec or (m, n, c, consistent) tuples
    methods : sequence of str
        Subset of ``METHODS``.
    repeats : int
        Independent problem instances per spec.
    master_seed : int
    stop : StopRule, optional
        Defaults to RRE < 0.5e-6 with a 500000-step cap.
    workers : int
        Threads used to run repeats concurrently.

    Returns
    -------
    BenchTable
    """
    specs = [s if isinstance(s, TableSpec) else TableSpec(*s) for s in specs]
    methods = _check_methods(methods)
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    stop = StopRule() if stop is None else stop
    jobs = [(si, ri) for si in range(len(specs)) for ri in range(repeats)]

    def job(key):
        si, ri = key
        spec = specs[si]
        child = derive_seed(master_seed, si, ri)
        problem = generate(GeneratorSpec(spec.m, spec.n, spec.c, spec.consistent, child))
        return _run_methods(problem, methods, child, stop, cfg)

    results = dict(zip(jobs, _map(job, jobs, workers)))

    rows, speedups, iterations = [], [], {}
    for si, spec in enumerate(specs):
        cpu_median = {}
        for name in methods:
            runs = [results[(si, ri)][name] for ri in range(repeats)]
            its = [it for it, _ in runs]
            iterations[(si, name)] = its
            med_it = _median(its)
            med_cpu = None
            if med_it is not None:
                med_cpu = statistics.median(t for _, t in runs)
            cpu_median[name] = med_cpu
            rows.append(BenchRow(spec, name, med_it, med_cpu, repeats))
        for label, (slow, fast) in SPEEDUP_PAIRS.items():
            if slow in methods and fast in methods:
                a, b = cpu_median[slow], cpu_median[fast]
                value = a / b if a is not None and b is not None and b > 0 else None
                speedups.append(SpeedupRow(spec, label, value))
    return BenchTable(rows, speedups, iterations)


@dataclass(frozen=True)
class SweepRow:
    c: float
    median_kappa_f_sq: float
    median_it: dict


@dataclass
class SweepTable:
    rows: list
    methods: tuple

    def to_csv(self):
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["c", "median_kappa_f_sq"] + [f"median_it_{m}" for m in self.methods])
        for r in self.rows:
            w.writerow([_fmt(r.c), format(r.median_kappa_f_sq, ".10g")] +
                       [_fmt_it(r.median_it[m]) for m in self.methods])
        return out.getvalue()


def run_sweep_c(m, n, c_grid, repeats=10, master_seed=0, it_cap=800_000,
                methods=("CD", "RCD"), stop=None, workers=1):
    """Median ``kappa_F^2`` and iteration counts over a grid of lower endpoints.

    Problems are consistent; methods stop at RRE < 0.5e-6 or ``it_cap`` steps
    (``stop`` overrides both). Pass ``methods=()`` to compute the condition
    numbers only.
    """
    c_grid = [float(c) for c in c_grid]
    if not c_grid:
        raise ValueError("c_grid is empty")
    for lo, hi in zip(c_grid, c_grid[1:]):
        if not hi > lo:
            raise ValueError("c_grid must be strictly increasing")
    if not (0.0 <= c_grid[0] and c_grid[-1] < 1.0):
        raise ValueError("c_grid must lie in [0, 1)")
    methods = _check_methods(methods)
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    stop = StopRule(max_iters=it_cap) if stop is None else stop
    jobs = [(ci, ri) for ci in range(len(c_grid)) for ri in range(repeats)]

    def job(key):
        ci, ri = key
        child = derive_seed(master_seed, ci, ri)
        problem = generate(GeneratorSpec(m, n, c_grid[ci], True, child))
        return kappa_f_sq(problem.A), _run_methods(problem, methods, child, stop, None)

    results = dict(zip(jobs, _map(job, jobs, workers)))
    rows = []
    for ci, c in enumerate(c_grid):
        kappas = [results[(ci, ri)][0] for ri in range(repeats)]
        its = {name: _median([results[(ci, ri)][1][name][0] for ri in range(repeats)])
               for name in methods}
        rows.append(SweepRow(c, statistics.median(kappas), its))
    return SweepTable(rows, methods)
